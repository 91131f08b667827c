#include <gtest/gtest.h>

#include "genheis/opmatrix.hpp"

using namespace genheis;

namespace
{

GaussianRational q(long a, long b = 1) { return GaussianRational(make_rational(a, b)); }

/// Dense n^2 x n^2 matrix over all ordered pairs, including the diagonal ones.
using Dense = std::vector<std::vector<NCPoly>>;

std::size_t ord(int n, int mu, int nu)
{
	return static_cast<std::size_t>((mu - 1) * n + (nu - 1));
}

Dense dense_k(Algebra const &alg)
{
	int const n = alg.dim();
	Metric const &g = alg.metric();
	Dense k(static_cast<std::size_t>(n * n),
	        std::vector<NCPoly>(static_cast<std::size_t>(n * n), NCPoly(alg)));
	for (int mu = 1; mu <= n; ++mu)
		for (int nu = 1; nu <= n; ++nu)
			for (int al = 1; al <= n; ++al)
				for (int be = 1; be <= n; ++be)
					k[ord(n, mu, nu)][ord(n, al, be)] =
					    q(1, 2) * (q(g(mu, al)) * NCPoly::d(alg, nu, be) -
					               q(g(mu, be)) * NCPoly::d(alg, nu, al) +
					               q(g(nu, be)) * NCPoly::d(alg, mu, al) -
					               q(g(nu, al)) * NCPoly::d(alg, mu, be));
	return k;
}

Dense dense_unit(Algebra const &alg)
{
	int const n = alg.dim();
	Metric const &g = alg.metric();
	Dense u(static_cast<std::size_t>(n * n),
	        std::vector<NCPoly>(static_cast<std::size_t>(n * n), NCPoly(alg)));
	for (int mu = 1; mu <= n; ++mu)
		for (int nu = 1; nu <= n; ++nu)
			for (int al = 1; al <= n; ++al)
				for (int be = 1; be <= n; ++be)
					u[ord(n, mu, nu)][ord(n, al, be)] = NCPoly::constant(
					    alg, q(g(mu, al) * g(nu, be) - g(mu, be) * g(nu, al), 2));
	return u;
}

/// Plain sum over all ordered (theta, sigma) with the metric inserted.
Dense dense_mul(Algebra const &alg, Dense const &a, Dense const &b)
{
	int const n = alg.dim();
	Metric const &g = alg.metric();
	std::size_t const s = a.size();
	Dense r(s, std::vector<NCPoly>(s, NCPoly(alg)));
	for (std::size_t i = 0; i < s; ++i)
		for (std::size_t j = 0; j < s; ++j)
			for (int th = 1; th <= n; ++th)
				for (int si = 1; si <= n; ++si)
				{
					std::size_t const k = ord(n, th, si);
					r[i][j] += q(g(th, th) * g(si, si)) * (a[i][k] * b[k][j]);
				}
	return r;
}

void expect_matches(OpMatrix const &m, Dense const &d)
{
	int const n = m.algebra().dim();
	for (int mu = 1; mu <= n; ++mu)
		for (int nu = 1; nu <= n; ++nu)
			for (int al = 1; al <= n; ++al)
				for (int be = 1; be <= n; ++be)
					EXPECT_EQ(m.entry({mu, nu}, {al, be}), d[ord(n, mu, nu)][ord(n, al, be)])
					    << "(" << mu << nu << ")(" << al << be << ")";
}

} // namespace

TEST(KMatrix, Entries)
{
	Algebra h3 = Algebra::heisenberg(3);
	OpMatrix k = k_matrix(h3);
	EXPECT_EQ(k.entry({1, 2}, {1, 3}), q(1, 2) * NCPoly::d(h3, 2, 3));
	EXPECT_TRUE(k.entry({1, 2}, {1, 2}).is_zero());
	EXPECT_EQ(k.entry({2, 1}, {1, 3}), -k.entry({1, 2}, {1, 3}));
	EXPECT_TRUE(k.entry({1, 1}, {1, 3}).is_zero());
	EXPECT_TRUE(k_matrix(4, MetricKind::Euclidean).entry({1, 2}, {3, 4}).is_zero());
	EXPECT_TRUE(k_matrix(4, MetricKind::Minkowski).entry({1, 2}, {3, 4}).is_zero());
	EXPECT_THROW(k_matrix(1, MetricKind::Euclidean), std::domain_error);
	EXPECT_THROW(k_matrix(Algebra::weyl(3)), std::invalid_argument);
}

TEST(KMatrix, TransposeIsNegative)
{
	for (MetricKind kind : {MetricKind::Euclidean, MetricKind::Minkowski})
	{
		OpMatrix k = k_matrix(4, kind);
		EXPECT_EQ(transpose(k), scale(k, -1));
	}
}

TEST(KMatrix, PowersAgreeWithDenseOrderedPairSums)
{
	for (MetricKind kind : {MetricKind::Euclidean, MetricKind::Minkowski})
		for (int n : {2, 3, 4})
		{
			Algebra alg = Algebra::heisenberg(n, kind);
			OpMatrix k = k_matrix(alg);
			Dense dk = dense_k(alg);
			expect_matches(k, dk);
			Dense dp = dense_unit(alg);
			auto powers = matrix_powers(k, 3);
			for (int m = 0; m <= 3; ++m)
			{
				expect_matches(powers[static_cast<std::size_t>(m)], dp);
				dp = dense_mul(alg, dp, dk);
			}
		}
}

TEST(KMatrix, SquareExample)
{
	Algebra h3 = Algebra::heisenberg(3);
	OpMatrix k = k_matrix(h3);
	NCPoly want = q(-1, 2) * (power(NCPoly::d(h3, 1, 3), 2) + power(NCPoly::d(h3, 2, 3), 2));
	EXPECT_EQ(mat_mul(k, k).entry({1, 2}, {1, 2}), want);
	EXPECT_EQ(closed_form_k_power(h3, 2).entry({1, 2}, {1, 2}), want);
}

TEST(Identity, UnitsAndNeutrality)
{
	Algebra h3 = Algebra::heisenberg(3);
	OpMatrix u = identity_matrix(h3, Space::pair(3));
	EXPECT_EQ(u.entry({1, 2}, {1, 2}), NCPoly::constant(h3, q(1, 2)));
	EXPECT_EQ(u.entry({2, 1}, {1, 2}), NCPoly::constant(h3, q(-1, 2)));

	Algebra m2 = Algebra::heisenberg(2, MetricKind::Minkowski);
	EXPECT_EQ(identity_matrix(m2, Space::vec(2)).entry({1}, {1}), NCPoly::constant(m2, -1));

	for (MetricKind kind : {MetricKind::Euclidean, MetricKind::Minkowski})
	{
		Algebra alg = Algebra::heisenberg(4, kind);
		OpMatrix k = k_matrix(alg);
		OpMatrix up = identity_matrix(alg, Space::pair(4));
		EXPECT_EQ(mat_mul(k, up), k);
		EXPECT_EQ(mat_mul(up, k), k);
		OpMatrix d = partial_matrix(alg);
		OpMatrix uv = identity_matrix(alg, Space::vec(4));
		EXPECT_EQ(mat_mul(d, uv), d);
		EXPECT_EQ(mat_mul(uv, d), d);
	}
}

TEST(PartialMatrix, SquareUnderMetric)
{
	// (d^2)_{11} = d_{12} eta_{22} d_{21} = -d_{12}^2 for n = 2, either metric
	for (MetricKind kind : {MetricKind::Euclidean, MetricKind::Minkowski})
	{
		Algebra alg = Algebra::heisenberg(2, kind);
		OpMatrix d = partial_matrix(alg);
		OpMatrix d2 = mat_mul(d, d);
		EXPECT_EQ(d2.entry({1}, {1}), -power(NCPoly::d(alg, 1, 2), 2));
		EXPECT_EQ(d2.entry({2}, {2}), GaussianRational(alg.metric()(1, 1)) *
		                                  -power(NCPoly::d(alg, 1, 2), 2));
		EXPECT_TRUE(d2.entry({1}, {2}).is_zero());
	}
}

TEST(MatMul, SpaceMismatchThrows)
{
	Algebra alg = Algebra::heisenberg(3);
	EXPECT_THROW(mat_mul(k_matrix(alg), partial_matrix(alg)), std::invalid_argument);
	EXPECT_THROW(OpMatrix(alg, Space::vec(4), Space::vec(4)), std::invalid_argument);
}

TEST(Psi, LowOrders)
{
	Algebra alg = Algebra::heisenberg(3);
	OpMatrix k = k_matrix(alg);
	OpMatrix u = identity_matrix(alg, Space::pair(3));
	EXPECT_EQ(psi_of(k, 0), u);
	EXPECT_EQ(psi_of(k, 1), u + scale(k, q(1, 2)));
	EXPECT_EQ(psi_inv_of(k, 0), u);
	EXPECT_EQ(psi_inv_of(k, 1), u + scale(k, q(-1, 2)));
	EXPECT_EQ(psi_of(k, 2), u + scale(k, q(1, 2)) + scale(mat_mul(k, k), q(1, 12)));
	EXPECT_THROW(psi_of(u, 2), std::domain_error);
}

TEST(Psi, SeriesInverse)
{
	for (MetricKind kind : {MetricKind::Euclidean, MetricKind::Minkowski})
		for (int n : {3, 4})
		{
			Algebra alg = Algebra::heisenberg(n, kind);
			OpMatrix k = k_matrix(alg);
			for (int d = 0; d <= 4; ++d)
			{
				OpMatrix prod = mat_mul(psi_of(k, d), psi_inv_of(k, d), d);
				EXPECT_EQ(truncate(prod, d), identity_matrix(alg, Space::pair(n)));
			}
		}
}

TEST(Exp, TwoByTwo)
{
	Algebra e = Algebra::heisenberg(2);
	NCPoly d12 = NCPoly::d(e, 1, 2);
	NCPoly one = NCPoly::constant(e, 1);
	EXPECT_EQ(exp_partial(e, 3).entry({1}, {2}), d12 - q(1, 6) * power(d12, 3));
	EXPECT_EQ(exp_partial(e, 2).entry({1}, {1}), one - q(1, 2) * power(d12, 2));
	EXPECT_EQ(exp_partial(e, 3).entry({2}, {1}), -d12 + q(1, 6) * power(d12, 3));

	// hyperbolic for the Minkowski metric: (d^3)_{12} = d_{12}^3
	Algebra m = Algebra::heisenberg(2, MetricKind::Minkowski);
	NCPoly b12 = NCPoly::d(m, 1, 2);
	EXPECT_EQ(exp_partial(m, 0), identity_matrix(m, Space::vec(2)));
	EXPECT_EQ(exp_partial(m, 3).entry({1}, {2}), b12 + q(1, 6) * power(b12, 3));
	EXPECT_EQ(exp_partial(m, 2).entry({1}, {1}),
	          NCPoly::constant(m, -1) - q(1, 2) * power(b12, 2));
}

TEST(ClosedForm, LowPowers)
{
	for (MetricKind kind : {MetricKind::Euclidean, MetricKind::Minkowski})
	{
		Algebra alg = Algebra::heisenberg(3, kind);
		EXPECT_EQ(closed_form_k_power(alg, 0), identity_matrix(alg, Space::pair(3)));
		EXPECT_EQ(closed_form_k_power(alg, 1), k_matrix(alg));
	}
}

TEST(KTilde, Blocks)
{
	Algebra e = Algebra::extended(4);
	BlockMatrix kt = ktilde(e);
	EXPECT_EQ(kt.a.entry({1}, {2}), NCPoly::d(e, 1, 2));
	EXPECT_EQ(kt.c.entry({1, 2}, {1}), -NCPoly::dv(e, 2));
	EXPECT_EQ(kt.c.entry({1, 2}, {2}), -NCPoly::dv(e, 1));
	EXPECT_EQ(kt.c.entry({2, 3}, {3}), -NCPoly::dv(e, 2));
	EXPECT_TRUE(kt.b.is_zero());
	EXPECT_EQ(kt.d, k_matrix(e));
	EXPECT_THROW(ktilde(Algebra::heisenberg(3)), std::invalid_argument);
}

TEST(KTilde, PowersAgreeWithBlockProducts)
{
	for (MetricKind kind : {MetricKind::Euclidean, MetricKind::Minkowski})
	{
		Algebra e = Algebra::extended(3, kind);
		BlockMatrix kt = ktilde(e);
		EXPECT_EQ(ktilde_power(kt, 0), block_identity(e));
		EXPECT_TRUE(ktilde_power(kt, 0).c.is_zero());
		EXPECT_EQ(ktilde_power(kt, 1).c, kt.c);
		EXPECT_EQ(ktilde_power(kt, 2).c, mat_mul(kt.c, kt.a) + mat_mul(kt.d, kt.c));
		BlockMatrix direct = block_identity(e);
		for (int m = 1; m <= 4; ++m)
		{
			direct = block_mul(direct, kt);
			EXPECT_EQ(ktilde_power(kt, m), direct) << m;
		}
	}
}

TEST(KTilde, PsiBlocks)
{
	Algebra e = Algebra::extended(3);
	BlockMatrix kt = ktilde(e);
	BlockMatrix p = psi_of(kt, 3);
	EXPECT_EQ(p.a, psi_of(kt.a, 3));
	EXPECT_EQ(p.d, psi_of(kt.d, 3));
	EXPECT_TRUE(p.b.is_zero());
	OpMatrix c = scale(kt.c, q(1, 2));
	auto k2 = ktilde_power(kt, 2).c;
	auto k3 = ktilde_power(kt, 3).c;
	c = c + scale(k2, q(1, 12));
	c = c + scale(k3, GaussianRational(psi_coeff(3)));
	EXPECT_EQ(p.c, c);
}
