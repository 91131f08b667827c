#ifndef GENHEIS_OPMATRIX_HPP
#define GENHEIS_OPMATRIX_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "genheis/exactnum.hpp"
#include "genheis/ncalgebra.hpp"

namespace genheis
{

enum class SpaceKind
{
	Vec,
	Pair
};

/// Row or column index space of an OpMatrix: 1..n, or antisymmetric pairs
/// stored canonically (lo < hi).
struct Space
{
	SpaceKind kind;
	int n;

	static Space vec(int n) { return {SpaceKind::Vec, n}; }
	static Space pair(int n) { return {SpaceKind::Pair, n}; }

	std::size_t size() const
	{
		return kind == SpaceKind::Vec ? static_cast<std::size_t>(n)
		                              : pair_count(n);
	}

	friend bool operator==(Space const &, Space const &) = default;
};

inline std::string to_string(Space s)
{
	return (s.kind == SpaceKind::Vec ? "vec(" : "pair(") + std::to_string(s.n) +
	       ")";
}

/// Vec index {mu} or pair index {mu, nu}; both 1-based.
struct Index
{
	int a;
	int b = 0;
};

namespace detail
{

/// Storage slot and sign of an index; nullopt for a diagonal pair.
inline std::optional<std::pair<std::size_t, int>> slot(Space s, Index i)
{
	if (s.kind == SpaceKind::Vec)
	{
		if (i.a < 1 || i.a > s.n || i.b != 0)
			throw std::out_of_range("vec index out of range");
		return std::pair{static_cast<std::size_t>(i.a - 1), 1};
	}
	if (i.a < 1 || i.b < 1 || i.a > s.n || i.b > s.n)
		throw std::out_of_range("pair index out of range");
	auto c = PairIndex::canonical(i.a, i.b);
	if (!c)
		return std::nullopt;
	return std::pair{pair_position(s.n, c->first), c->second};
}

} // namespace detail

/// Matrix over the commutative derivative subalgebra, rows and columns
/// indexed by vectors or antisymmetric pairs.
class OpMatrix
{
  public:
	OpMatrix(Algebra alg, Space rows, Space cols)
	    : alg_(std::move(alg)), rows_(rows), cols_(cols),
	      entries_(rows.size() * cols.size(), NCPoly(alg_))
	{
		if (rows.n != alg_.dim() || cols.n != alg_.dim())
			throw std::invalid_argument("OpMatrix: space/algebra dimension mismatch");
	}

	Algebra const &algebra() const { return alg_; }
	Metric const &metric() const { return alg_.metric(); }
	Space rows() const { return rows_; }
	Space cols() const { return cols_; }

	NCPoly const &at(std::size_t r, std::size_t c) const
	{
		return entries_[r * cols_.size() + c];
	}
	NCPoly &at(std::size_t r, std::size_t c)
	{
		return entries_[r * cols_.size() + c];
	}

	/// Entry for arbitrary (possibly non-canonical) indices.
	NCPoly entry(Index r, Index c) const
	{
		auto sr = detail::slot(rows_, r);
		auto sc = detail::slot(cols_, c);
		if (!sr || !sc)
			return NCPoly(alg_);
		NCPoly const &e = at(sr->first, sc->first);
		return sr->second * sc->second > 0 ? e : -e;
	}

	bool is_zero() const
	{
		for (auto const &e : entries_)
			if (!e.is_zero())
				return false;
		return true;
	}

	friend bool operator==(OpMatrix const &, OpMatrix const &) = default;

  private:
	Algebra alg_;
	Space rows_;
	Space cols_;
	std::vector<NCPoly> entries_;
};

/// Weight of inner index k in a metric contraction over space s. For pairs the
/// sum over all ordered (lambda, rho) equals twice the canonical sum.
inline int contraction_weight(Space s, Metric const &g, std::size_t k)
{
	if (s.kind == SpaceKind::Vec)
		return g.diag(static_cast<int>(k) + 1);
	auto p = pair_at(s.n, k);
	return 2 * g.diag(p.lo) * g.diag(p.hi);
}

inline OpMatrix zero_matrix(Algebra const &alg, Space rows, Space cols)
{
	return OpMatrix(alg, rows, cols);
}

/// Unit of mat_mul: eta_{mu nu} on vectors,
/// 1/2 (g_{mu a} g_{nu b} - g_{mu b} g_{nu a}) on pairs.
inline OpMatrix identity_matrix(Algebra const &alg, Space space)
{
	OpMatrix m(alg, space, space);
	Metric const &g = alg.metric();
	for (std::size_t k = 0; k < space.size(); ++k)
	{
		if (space.kind == SpaceKind::Vec)
			m.at(k, k) = NCPoly::constant(alg, g.diag(static_cast<int>(k) + 1));
		else
		{
			auto p = pair_at(space.n, k);
			m.at(k, k) = NCPoly::constant(
			    alg, make_rational(g.diag(p.lo) * g.diag(p.hi), 2));
		}
	}
	return m;
}

/// Metric-contracted product; dmax >= 0 truncates every entry.
inline OpMatrix mat_mul(OpMatrix const &a, OpMatrix const &b, int dmax = -1)
{
	if (!(a.cols() == b.rows()))
		throw std::invalid_argument("mat_mul: space mismatch " +
		                            to_string(a.cols()) + " vs " +
		                            to_string(b.rows()));
	if (!(a.algebra() == b.algebra()))
		throw std::invalid_argument("mat_mul: algebra mismatch");
	Space const inner = a.cols();
	OpMatrix r(a.algebra(), a.rows(), b.cols());
	for (std::size_t i = 0; i < a.rows().size(); ++i)
		for (std::size_t j = 0; j < b.cols().size(); ++j)
		{
			NCPoly acc(a.algebra());
			for (std::size_t k = 0; k < inner.size(); ++k)
			{
				if (a.at(i, k).is_zero() || b.at(k, j).is_zero())
					continue;
				NCPoly t = mul(a.at(i, k), b.at(k, j), dmax);
				t *= GaussianRational(contraction_weight(inner, a.metric(), k));
				acc += t;
			}
			r.at(i, j) = std::move(acc);
		}
	return r;
}

inline OpMatrix operator+(OpMatrix a, OpMatrix const &b)
{
	if (!(a.rows() == b.rows() && a.cols() == b.cols()))
		throw std::invalid_argument("OpMatrix +: shape mismatch");
	for (std::size_t i = 0; i < a.rows().size(); ++i)
		for (std::size_t j = 0; j < a.cols().size(); ++j)
			a.at(i, j) += b.at(i, j);
	return a;
}

inline OpMatrix scale(OpMatrix a, GaussianRational const &c)
{
	for (std::size_t i = 0; i < a.rows().size(); ++i)
		for (std::size_t j = 0; j < a.cols().size(); ++j)
			a.at(i, j) *= c;
	return a;
}

inline OpMatrix transpose(OpMatrix const &m)
{
	OpMatrix t(m.algebra(), m.cols(), m.rows());
	for (std::size_t i = 0; i < m.rows().size(); ++i)
		for (std::size_t j = 0; j < m.cols().size(); ++j)
			t.at(j, i) = m.at(i, j);
	return t;
}

inline OpMatrix truncate(OpMatrix m, int dmax)
{
	for (std::size_t i = 0; i < m.rows().size(); ++i)
		for (std::size_t j = 0; j < m.cols().size(); ++j)
			m.at(i, j) = truncate(m.at(i, j), dmax);
	return m;
}

/// Pair x pair matrix
/// K_{(mu nu)(a b)} = 1/2 (g_{mu a} d_{nu b} - g_{mu b} d_{nu a}
///                       + g_{nu b} d_{mu a} - g_{nu a} d_{mu b}).
inline OpMatrix k_matrix(Algebra const &alg)
{
	if (alg.mode() == Mode::Weyl)
		throw std::invalid_argument("k_matrix: needs a pair algebra");
	int const n = alg.dim();
	if (n < 2)
		throw std::domain_error("k_matrix: n must be at least 2");
	Metric const &g = alg.metric();
	Space const s = Space::pair(n);
	OpMatrix k(alg, s, s);
	GaussianRational const half = make_rational(1, 2);
	for (std::size_t r = 0; r < s.size(); ++r)
		for (std::size_t c = 0; c < s.size(); ++c)
		{
			auto [mu, nu] = pair_at(n, r);
			auto [al, be] = pair_at(n, c);
			NCPoly e = GaussianRational(g(mu, al)) * NCPoly::d(alg, nu, be) -
			           GaussianRational(g(mu, be)) * NCPoly::d(alg, nu, al) +
			           GaussianRational(g(nu, be)) * NCPoly::d(alg, mu, al) -
			           GaussianRational(g(nu, al)) * NCPoly::d(alg, mu, be);
			k.at(r, c) = half * e;
		}
	return k;
}

inline OpMatrix k_matrix(int n, MetricKind kind)
{
	if (n < 2)
		throw std::domain_error("k_matrix: n must be at least 2");
	return k_matrix(Algebra::heisenberg(n, kind));
}

/// Vec x vec matrix of generators, entry (mu, nu) = d_{mu nu}.
inline OpMatrix partial_matrix(Algebra const &alg)
{
	if (alg.mode() == Mode::Weyl)
		throw std::invalid_argument("partial_matrix: needs a pair algebra");
	int const n = alg.dim();
	OpMatrix m(alg, Space::vec(n), Space::vec(n));
	for (int mu = 1; mu <= n; ++mu)
		for (int nu = 1; nu <= n; ++nu)
			m.at(mu - 1, nu - 1) = NCPoly::d(alg, mu, nu);
	return m;
}

/// [m^0, m^1, ..., m^kmax]; m must be square.
inline std::vector<OpMatrix> matrix_powers(OpMatrix const &m, int kmax,
                                           int dmax = -1)
{
	if (!(m.rows() == m.cols()))
		throw std::invalid_argument("matrix_powers: matrix not square");
	std::vector<OpMatrix> p{identity_matrix(m.algebra(), m.rows())};
	for (int k = 1; k <= kmax; ++k)
		p.push_back(mat_mul(p.back(), m, dmax));
	return p;
}

/// sum_k coeff(k) m^k for k = 0..dmax, from precomputed powers.
inline OpMatrix power_series(std::vector<OpMatrix> const &powers, int dmax,
                             std::function<Rational(unsigned)> const &coeff)
{
	OpMatrix r = zero_matrix(powers[0].algebra(), powers[0].rows(),
	                         powers[0].cols());
	for (int k = 0; k <= dmax; ++k)
	{
		Rational c = coeff(static_cast<unsigned>(k));
		if (c != 0)
			r = r + scale(powers.at(static_cast<std::size_t>(k)), c);
	}
	return r;
}

namespace detail
{

inline void require_linear_entries(OpMatrix const &m)
{
	for (std::size_t i = 0; i < m.rows().size(); ++i)
		for (std::size_t j = 0; j < m.cols().size(); ++j)
			for (auto const &t : m.at(i, j).terms())
				if (t.first.d_degree() != 1 || t.first.x_degree() != 0)
					throw std::domain_error(
					    "series of a matrix: entries must be homogeneous of "
					    "derivative degree 1");
}

} // namespace detail

/// Truncated psi(m) = sum_{k<=dmax} psi_coeff(k) m^k.
inline OpMatrix psi_of(OpMatrix const &m, int dmax)
{
	detail::require_linear_entries(m);
	return power_series(matrix_powers(m, dmax), dmax, psi_coeff);
}

/// Truncated psi(m)^{-1} = sum_{k<=dmax} (-m)^k / (k+1)!.
inline OpMatrix psi_inv_of(OpMatrix const &m, int dmax)
{
	detail::require_linear_entries(m);
	return power_series(matrix_powers(m, dmax), dmax, psi_inv_coeff);
}

inline Rational exp_coeff(unsigned k) { return Rational(1) / Rational(factorial(k)); }

/// Truncated e^d with metric powers (d^0 = eta, d^m = d^{m-1} eta d).
inline OpMatrix exp_partial(Algebra const &alg, int dmax)
{
	return power_series(matrix_powers(partial_matrix(alg), dmax), dmax,
	                    exp_coeff);
}

inline OpMatrix exp_partial(int n, MetricKind kind, int dmax)
{
	return exp_partial(Algebra::heisenberg(n, kind), dmax);
}

/// K^m from the binomial closed form
/// 1/2 sum_k binom(m,k) ((d^k)_{mu a} (d^{m-k})_{nu b} - (d^{m-k})_{mu b} (d^k)_{nu a}),
/// with metric powers of d. Proven for the Euclidean metric; the Minkowski
/// version is an empirical extension.
inline OpMatrix closed_form_k_power(Algebra const &alg, int m)
{
	if (m < 0)
		throw std::domain_error("closed_form_k_power: negative power");
	int const n = alg.dim();
	auto dp = matrix_powers(partial_matrix(alg), m);
	Space const s = Space::pair(n);
	OpMatrix r(alg, s, s);
	for (std::size_t row = 0; row < s.size(); ++row)
		for (std::size_t col = 0; col < s.size(); ++col)
		{
			auto [mu, nu] = pair_at(n, row);
			auto [al, be] = pair_at(n, col);
			NCPoly acc(alg);
			for (int k = 0; k <= m; ++k)
			{
				auto const &pk = dp[static_cast<std::size_t>(k)];
				auto const &pmk = dp[static_cast<std::size_t>(m - k)];
				NCPoly t = mul(pk.entry({mu}, {al}), pmk.entry({nu}, {be})) -
				           mul(pmk.entry({mu}, {be}), pk.entry({nu}, {al}));
				t *= GaussianRational(Rational(binomial(static_cast<unsigned>(m),
				                                        static_cast<unsigned>(k))));
				acc += t;
			}
			acc *= GaussianRational(make_rational(1, 2));
			r.at(row, col) = std::move(acc);
		}
	return r;
}

inline OpMatrix closed_form_k_power(int n, MetricKind kind, int m)
{
	return closed_form_k_power(Algebra::heisenberg(n, kind), m);
}

/// 2x2 block matrix over (vec, pair) index spaces:
///   [ a (vec x vec)   b (vec x pair)  ]
///   [ c (pair x vec)  d (pair x pair) ]
struct BlockMatrix
{
	OpMatrix a;
	OpMatrix b;
	OpMatrix c;
	OpMatrix d;

	friend bool operator==(BlockMatrix const &, BlockMatrix const &) = default;
};

inline BlockMatrix block_identity(Algebra const &alg)
{
	int const n = alg.dim();
	return {identity_matrix(alg, Space::vec(n)),
	        zero_matrix(alg, Space::vec(n), Space::pair(n)),
	        zero_matrix(alg, Space::pair(n), Space::vec(n)),
	        identity_matrix(alg, Space::pair(n))};
}

inline BlockMatrix block_mul(BlockMatrix const &x, BlockMatrix const &y,
                             int dmax = -1)
{
	return {mat_mul(x.a, y.a, dmax) + mat_mul(x.b, y.c, dmax),
	        mat_mul(x.a, y.b, dmax) + mat_mul(x.b, y.d, dmax),
	        mat_mul(x.c, y.a, dmax) + mat_mul(x.d, y.c, dmax),
	        mat_mul(x.c, y.b, dmax) + mat_mul(x.d, y.d, dmax)};
}

/// Lower-triangular block matrix of the extended algebra:
/// A = d_{mu nu}, C_{(mu nu) a} = eta_{a mu} d_nu - eta_{a nu} d_mu, D = K.
inline BlockMatrix ktilde(Algebra const &alg)
{
	if (alg.mode() != Mode::PairVec)
		throw std::invalid_argument("ktilde: needs the extended algebra");
	int const n = alg.dim();
	Metric const &g = alg.metric();
	OpMatrix c(alg, Space::pair(n), Space::vec(n));
	for (std::size_t r = 0; r < pair_count(n); ++r)
	{
		auto [mu, nu] = pair_at(n, r);
		for (int al = 1; al <= n; ++al)
			c.at(r, static_cast<std::size_t>(al - 1)) =
			    GaussianRational(g(al, mu)) * NCPoly::dv(alg, nu) -
			    GaussianRational(g(al, nu)) * NCPoly::dv(alg, mu);
	}
	return {partial_matrix(alg), zero_matrix(alg, Space::vec(n), Space::pair(n)),
	        std::move(c), k_matrix(alg)};
}

inline BlockMatrix ktilde(int n, MetricKind kind = MetricKind::Minkowski)
{
	return ktilde(Algebra::extended(n, kind));
}

/// kt^m via [A^m, 0; sum_{k<m} D^k C A^{m-k-1}, D^m].
inline BlockMatrix ktilde_power(BlockMatrix const &kt, int m)
{
	if (m < 0)
		throw std::domain_error("ktilde_power: negative power");
	if (!kt.b.is_zero())
		throw std::invalid_argument("ktilde_power: upper-right block not zero");
	Algebra const &alg = kt.a.algebra();
	if (m == 0)
		return block_identity(alg);
	auto ap = matrix_powers(kt.a, m);
	auto dp = matrix_powers(kt.d, m);
	int const n = alg.dim();
	OpMatrix lower = zero_matrix(alg, Space::pair(n), Space::vec(n));
	for (int k = 0; k < m; ++k)
		lower = lower + mat_mul(mat_mul(dp[static_cast<std::size_t>(k)], kt.c),
		                        ap[static_cast<std::size_t>(m - k - 1)]);
	return {ap[static_cast<std::size_t>(m)],
	        zero_matrix(alg, Space::vec(n), Space::pair(n)), std::move(lower),
	        dp[static_cast<std::size_t>(m)]};
}

/// Truncated psi of the block matrix, blockwise.
inline BlockMatrix psi_of(BlockMatrix const &kt, int dmax)
{
	Algebra const &alg = kt.a.algebra();
	int const n = alg.dim();
	BlockMatrix r{zero_matrix(alg, Space::vec(n), Space::vec(n)),
	              zero_matrix(alg, Space::vec(n), Space::pair(n)),
	              zero_matrix(alg, Space::pair(n), Space::vec(n)),
	              zero_matrix(alg, Space::pair(n), Space::pair(n))};
	for (int k = 0; k <= dmax; ++k)
	{
		Rational c = psi_coeff(static_cast<unsigned>(k));
		if (c == 0)
			continue;
		BlockMatrix p = ktilde_power(kt, k);
		r.a = r.a + scale(p.a, c);
		r.b = r.b + scale(p.b, c);
		r.c = r.c + scale(p.c, c);
		r.d = r.d + scale(p.d, c);
	}
	return r;
}

} // namespace genheis

#endif
