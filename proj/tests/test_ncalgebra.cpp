#include <gtest/gtest.h>

#include "genheis/ncalgebra.hpp"
#include "fixtures.hpp"

using namespace genheis;
using namespace genheis::fixtures;

namespace
{

NCPoly one(Algebra const &alg) { return NCPoly::constant(alg, 1); }

} // namespace

TEST(Metric, Signature)
{
	Metric e = Metric::euclidean(4), m = Metric::minkowski(4);
	EXPECT_EQ(e(1, 1), 1);
	EXPECT_EQ(m(1, 1), -1);
	EXPECT_EQ(m(2, 2), 1);
	EXPECT_EQ(m(1, 2), 0);
	EXPECT_THROW(Metric(0, MetricKind::Euclidean), std::exception);
	EXPECT_EQ(parse_metric_kind("minkowski"), MetricKind::Minkowski);
	EXPECT_THROW(parse_metric_kind("riemann"), std::invalid_argument);
}

TEST(Algebra, Layout)
{
	Algebra h = Algebra::heisenberg(4);
	EXPECT_EQ(h.pair_vars(), 6u);
	EXPECT_EQ(h.vec_vars(), 0u);
	EXPECT_EQ(h.variables(), 12u);
	Algebra e = Algebra::extended(4);
	EXPECT_EQ(e.conjugates(), 10u);
	EXPECT_EQ(e.commutator_sign(e.var_index({GenKind::Pvec, 1, 0})), -1);
	EXPECT_EQ(e.commutator_sign(e.var_index({GenKind::Xpair, 1, 2})), -1);
	EXPECT_EQ(e.commutator_sign(e.var_index({GenKind::Xpair, 2, 3})), 1);
	EXPECT_FALSE(h.contains({GenKind::Pvec, 1, 0}));
	EXPECT_THROW(Algebra::weyl(3).var_index({GenKind::Xpair, 1, 2}), std::exception);
	EXPECT_THROW(Algebra(Mode::Weyl, Metric::minkowski(3)), std::exception);
	EXPECT_THROW(Algebra::heisenberg(1), std::exception);
	for (std::size_t k = 0; k < e.variables(); ++k)
		EXPECT_EQ(e.var_index(e.generator(k)), k);
}

TEST(Algebra, PairIndexing)
{
	for (int n = 2; n <= 6; ++n)
		for (std::size_t p = 0; p < pair_count(n); ++p)
			EXPECT_EQ(pair_position(n, pair_at(n, p)), p);
	auto c = PairIndex::canonical(3, 1);
	ASSERT_TRUE(c);
	EXPECT_EQ(c->first.lo, 1);
	EXPECT_EQ(c->second, -1);
	EXPECT_FALSE(PairIndex::canonical(2, 2));
}

TEST(NCPoly, Antisymmetry)
{
	Algebra h = Algebra::heisenberg(3);
	EXPECT_EQ(NCPoly::x(h, 2, 1), -NCPoly::x(h, 1, 2));
	EXPECT_TRUE(NCPoly::x(h, 2, 2).is_zero());
	EXPECT_TRUE(NCPoly::d(h, 1, 1).is_zero());
}

TEST(NCPoly, OrderingExamples)
{
	Algebra h3 = Algebra::heisenberg(3);
	EXPECT_EQ(NCPoly::d(h3, 1, 2) * NCPoly::x(h3, 1, 2),
	          NCPoly::x(h3, 1, 2) * NCPoly::d(h3, 1, 2) + one(h3));

	Algebra h4 = Algebra::heisenberg(4);
	NCPoly p = NCPoly::d(h4, 1, 2) * NCPoly::x(h4, 3, 4);
	EXPECT_EQ(p.size(), 1u);
	EXPECT_EQ(to_string(p), "(1)*x[3,4]*d[1,2]");

	Algebra m4 = Algebra::heisenberg(4, MetricKind::Minkowski);
	EXPECT_EQ(NCPoly::d(m4, 1, 2) * NCPoly::x(m4, 1, 2),
	          NCPoly::x(m4, 1, 2) * NCPoly::d(m4, 1, 2) - one(m4));
	EXPECT_EQ(commutator(NCPoly::d(m4, 2, 3), NCPoly::x(m4, 2, 3)), one(m4));
}

TEST(NCPoly, CommutatorExamples)
{
	Algebra h = Algebra::heisenberg(3);
	EXPECT_TRUE(commutator(NCPoly::x(h, 1, 2), NCPoly::x(h, 1, 3)).is_zero());
	EXPECT_TRUE(commutator(NCPoly::d(h, 1, 2), NCPoly::d(h, 2, 3)).is_zero());
	EXPECT_EQ(commutator(NCPoly::d(h, 1, 2), NCPoly::x(h, 2, 1)), -one(h));

	for (MetricKind kind : {MetricKind::Euclidean, MetricKind::Minkowski})
	{
		Algebra e = Algebra::extended(4, kind);
		for (int mu = 1; mu <= 4; ++mu)
			for (int nu = 1; nu <= 4; ++nu)
				EXPECT_EQ(commutator(NCPoly::dv(e, mu), NCPoly::p(e, nu)),
				          NCPoly::constant(e, e.metric()(mu, nu)));
		EXPECT_TRUE(commutator(NCPoly::dv(e, 1), NCPoly::x(e, 1, 2)).is_zero());
		EXPECT_TRUE(commutator(NCPoly::d(e, 1, 2), NCPoly::p(e, 1)).is_zero());
	}
}

// [d_{mu nu}, x_{al be}] = g_{mu al} g_{nu be} - g_{mu be} g_{nu al}, for all
// (ordered, possibly degenerate) index tuples.
TEST(NCPoly, DefiningRelations)
{
	for (MetricKind kind : {MetricKind::Euclidean, MetricKind::Minkowski})
	{
		Algebra h = Algebra::heisenberg(4, kind);
		Metric const &g = h.metric();
		for (int mu = 1; mu <= 4; ++mu)
			for (int nu = 1; nu <= 4; ++nu)
				for (int al = 1; al <= 4; ++al)
					for (int be = 1; be <= 4; ++be)
					{
						int want = g(mu, al) * g(nu, be) - g(mu, be) * g(nu, al);
						if (mu == nu || al == be)
							want = 0;
						EXPECT_EQ(commutator(NCPoly::d(h, mu, nu), NCPoly::x(h, al, be)),
						          NCPoly::constant(h, want));
					}
	}
}

TEST(NCPoly, WeylModeRelations)
{
	Algebra w = Algebra::weyl(3);
	for (int a = 1; a <= 3; ++a)
		for (int b = 1; b <= 3; ++b)
			EXPECT_EQ(commutator(NCPoly::da(w, a), NCPoly::xa(w, b)),
			          NCPoly::constant(w, a == b ? 1 : 0));
}

TEST(NCPoly, ProductMatchesRewriting)
{
	std::mt19937_64 rng(2024);
	for (Algebra const &alg : sample_algebras())
		for (int t = 0; t < 60; ++t)
		{
			NCPoly a = random_poly(alg, rng, 3, 4, t % 3 == 0);
			NCPoly b = random_poly(alg, rng, 3, 4);
			EXPECT_EQ(a * b, rewrite_product(a, b))
			    << to_string(a) << "  *  " << to_string(b);
		}
}

TEST(NCPoly, HighPowerMatchesRewriting)
{
	// d^5 x^5 in a single conjugate pair exercises the full Leibniz sum
	Algebra h = Algebra::heisenberg(4, MetricKind::Minkowski);
	NCPoly a = power(NCPoly::d(h, 1, 2), 5) * power(NCPoly::d(h, 2, 3), 2);
	NCPoly b = power(NCPoly::x(h, 1, 2), 5) * power(NCPoly::x(h, 2, 3), 3);
	EXPECT_EQ(a * b, rewrite_product(a, b));
}

TEST(NCPoly, TruncatedProductIsTruncationOfProduct)
{
	std::mt19937_64 rng(99);
	for (Algebra const &alg : sample_algebras())
		for (int t = 0; t < 30; ++t)
		{
			NCPoly a = random_poly(alg, rng, 4, 5);
			NCPoly b = random_poly(alg, rng, 4, 5);
			for (int d = 0; d <= 4; ++d)
				EXPECT_EQ(mul(a, b, d), truncate(a * b, d));
		}
}

TEST(NCPoly, Associativity)
{
	std::mt19937_64 rng(17);
	auto algs = sample_algebras();
	for (int t = 0; t < 200; ++t)
	{
		Algebra const &alg = algs[static_cast<std::size_t>(t) % algs.size()];
		NCPoly a = random_poly(alg, rng, 2, 3, true);
		NCPoly b = random_poly(alg, rng, 2, 3);
		NCPoly c = random_poly(alg, rng, 2, 3);
		EXPECT_EQ((a * b) * c, a * (b * c));
	}
}

TEST(NCPoly, JacobiIdentity)
{
	std::mt19937_64 rng(23);
	auto algs = sample_algebras();
	for (int t = 0; t < 100; ++t)
	{
		Algebra const &alg = algs[static_cast<std::size_t>(t) % algs.size()];
		NCPoly a = random_poly(alg, rng, 2, 3);
		NCPoly b = random_poly(alg, rng, 2, 3);
		NCPoly c = random_poly(alg, rng, 2, 3);
		NCPoly j = commutator(commutator(a, b), c) + commutator(commutator(b, c), a) +
		           commutator(commutator(c, a), b);
		EXPECT_TRUE(j.is_zero());
	}
}

TEST(NCPoly, Distributivity)
{
	std::mt19937_64 rng(5);
	Algebra alg = Algebra::extended(3);
	for (int t = 0; t < 50; ++t)
	{
		NCPoly a = random_poly(alg, rng, 3, 3);
		NCPoly b = random_poly(alg, rng, 3, 3);
		NCPoly c = random_poly(alg, rng, 3, 3);
		EXPECT_EQ(a * (b + c), a * b + a * c);
		EXPECT_EQ((a - a).size(), 0u);
	}
}

TEST(NCPoly, CrossAlgebraIsRejected)
{
	Algebra a = Algebra::heisenberg(3), b = Algebra::heisenberg(4);
	EXPECT_THROW(NCPoly::x(a, 1, 2) + NCPoly::x(b, 1, 2), std::invalid_argument);
	EXPECT_THROW(NCPoly::x(a, 1, 2) * NCPoly::x(b, 1, 2), std::invalid_argument);
	EXPECT_THROW(NCPoly::p(a, 1), std::exception);
}

TEST(Truncate, Examples)
{
	Algebra h = Algebra::heisenberg(3);
	NCPoly x12 = NCPoly::x(h, 1, 2);
	EXPECT_EQ(truncate(x12 + x12 * power(NCPoly::d(h, 1, 3), 2), 1), x12);
	EXPECT_EQ(truncate(one(h) + NCPoly::d(h, 1, 2), 0), one(h));

	Algebra e = Algebra::extended(3);
	NCPoly q = NCPoly::p(e, 1) * NCPoly::d(e, 1, 2) * NCPoly::dv(e, 1);
	EXPECT_EQ(truncate(q, 2), q);
	EXPECT_EQ(q.max_d_degree(), 2);
}

TEST(Action, Examples)
{
	Algebra h = Algebra::heisenberg(3);
	NCPoly x12 = NCPoly::x(h, 1, 2);
	EXPECT_EQ(act(NCPoly::d(h, 1, 2), PolyState(x12)).poly(), one(h));
	EXPECT_EQ(act(NCPoly::d(h, 1, 2), PolyState(x12 * x12)).poly(),
	          NCPoly::constant(h, 2) * x12);
	EXPECT_TRUE(act(NCPoly::d(h, 1, 2), PolyState(NCPoly::x(h, 1, 3))).poly().is_zero());
	EXPECT_EQ(act(x12, PolyState::one(h)).poly(), x12);
	EXPECT_THROW(PolyState(NCPoly::d(h, 1, 2)), std::invalid_argument);

	Algebra m = Algebra::heisenberg(3, MetricKind::Minkowski);
	EXPECT_EQ(act(NCPoly::d(m, 1, 2), PolyState(NCPoly::x(m, 1, 2))).poly(), -one(m));
}

TEST(Action, IsAModule)
{
	std::mt19937_64 rng(31);
	for (Algebra const &alg : sample_algebras())
		for (int t = 0; t < 30; ++t)
		{
			NCPoly a = random_poly(alg, rng, 2, 3);
			NCPoly b = random_poly(alg, rng, 2, 3);
			PolyState f(random_coordinate_poly(alg, rng, 3, 4));
			EXPECT_EQ(act(a * b, f), act(a, act(b, f)));
		}
}

TEST(Action, CommutatorActsAsRelation)
{
	// (d x - x d) |> f = s f for the single conjugate pair
	std::mt19937_64 rng(37);
	Algebra alg = Algebra::extended(3);
	for (std::size_t k = 0; k < alg.conjugates(); ++k)
	{
		NCPoly x = NCPoly::generator(alg, alg.generator(k));
		NCPoly d = NCPoly::generator(alg, alg.generator(k + alg.conjugates()));
		PolyState f(random_coordinate_poly(alg, rng, 4, 3));
		EXPECT_EQ(act(commutator(d, x), f).poly(),
		          NCPoly::constant(alg, alg.commutator_sign(k)) * f.poly());
	}
}

TEST(Text, PrintParseRoundTrip)
{
	std::mt19937_64 rng(41);
	for (Algebra const &alg : sample_algebras())
		for (int t = 0; t < 40; ++t)
		{
			NCPoly a = random_poly(alg, rng, 4, 4, t % 2 == 0);
			std::string s = to_string(a);
			EXPECT_EQ(parse_poly(alg, s), a) << s;
			EXPECT_EQ(to_string(parse_poly(alg, s)), s);
		}
}

TEST(Text, ParserForms)
{
	Algebra h = Algebra::heisenberg(3);
	EXPECT_EQ(parse_poly(h, "x[2,1]"), -NCPoly::x(h, 1, 2));
	EXPECT_EQ(parse_poly(h, "0"), NCPoly(h));
	EXPECT_EQ(parse_poly(h, "(1/2)*x[1,2]*d[1,3]^2 - (1)*1"),
	          NCPoly::constant(h, GaussianRational(make_rational(1, 2))) *
	                  (NCPoly::x(h, 1, 2) * power(NCPoly::d(h, 1, 3), 2)) -
	              one(h));
	EXPECT_EQ(parse_monomial(h, "1"), one(h));
	EXPECT_THROW(parse_poly(h, "x[1,4]"), std::exception);
	EXPECT_THROW(parse_poly(h, "y[1,2]"), std::invalid_argument);
	EXPECT_THROW(parse_poly(h, "(1/2)*"), std::invalid_argument);
	EXPECT_THROW(parse_monomial(h, "x[1,2] junk"), std::invalid_argument);
}
