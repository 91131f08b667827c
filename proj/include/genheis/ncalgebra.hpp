#ifndef GENHEIS_NCALGEBRA_HPP
#define GENHEIS_NCALGEBRA_HPP

#include <algorithm>
#include <cassert>
#include <cctype>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "genheis/exactnum.hpp"

namespace genheis
{

enum class MetricKind
{
	Euclidean,
	Minkowski
};

inline std::string to_string(MetricKind k)
{
	return k == MetricKind::Euclidean ? "euclidean" : "minkowski";
}

inline MetricKind parse_metric_kind(std::string_view s)
{
	if (s == "euclidean")
		return MetricKind::Euclidean;
	if (s == "minkowski")
		return MetricKind::Minkowski;
	throw std::invalid_argument("unknown metric '" + std::string(s) + "'");
}

/// Diagonal metric on 1..n: delta, or eta = diag(-1, 1, ..., 1).
class Metric
{
  public:
	Metric(int dim, MetricKind kind) : dim_(dim), kind_(kind)
	{
		if (dim < 1)
			throw std::domain_error("Metric: dimension must be positive");
	}

	static Metric euclidean(int n) { return {n, MetricKind::Euclidean}; }
	static Metric minkowski(int n) { return {n, MetricKind::Minkowski}; }

	int dim() const { return dim_; }
	MetricKind kind() const { return kind_; }

	/// g_{mu mu}, 1-based.
	int diag(int mu) const
	{
		return kind_ == MetricKind::Minkowski && mu == 1 ? -1 : 1;
	}
	int operator()(int mu, int nu) const { return mu == nu ? diag(mu) : 0; }

	friend bool operator==(Metric const &, Metric const &) = default;

  private:
	int dim_;
	MetricKind kind_;
};

/// Canonical antisymmetric index pair, lo < hi.
struct PairIndex
{
	int lo;
	int hi;

	/// (mu,nu) -> (canonical pair, sign); nullopt for mu == nu.
	static std::optional<std::pair<PairIndex, int>> canonical(int mu, int nu)
	{
		if (mu == nu)
			return std::nullopt;
		if (mu < nu)
			return std::pair{PairIndex{mu, nu}, 1};
		return std::pair{PairIndex{nu, mu}, -1};
	}

	friend auto operator<=>(PairIndex const &, PairIndex const &) = default;
};

inline std::size_t pair_count(int n)
{
	return static_cast<std::size_t>(n) * (n - 1) / 2;
}

/// Position of a canonical pair in lexicographic enumeration of 1..n.
inline std::size_t pair_position(int n, PairIndex p)
{
	int const i = p.lo - 1;
	return static_cast<std::size_t>(i * (2 * n - i - 1) / 2 + (p.hi - p.lo - 1));
}

inline PairIndex pair_at(int n, std::size_t pos)
{
	for (int lo = 1; lo < n; ++lo)
	{
		std::size_t const row = static_cast<std::size_t>(n - lo);
		if (pos < row)
			return {lo, lo + 1 + static_cast<int>(pos)};
		pos -= row;
	}
	throw std::out_of_range("pair_at: position out of range");
}

/// Coordinate-type kinds precede derivative-type kinds.
enum class GenKind : std::uint8_t
{
	Xpair,
	Pvec,
	Xvec,
	Dpair,
	Dvec,
	DvecA
};

struct Generator
{
	GenKind kind;
	int i;
	int j = 0; // second index, pair kinds only

	bool is_derivative() const { return kind >= GenKind::Dpair; }
	bool is_pair() const
	{
		return kind == GenKind::Xpair || kind == GenKind::Dpair;
	}

	friend auto operator<=>(Generator const &, Generator const &) = default;
};

inline std::string to_string(Generator const &g)
{
	auto vec = [&](char const *name) {
		return std::string(name) + "[" + std::to_string(g.i) + "]";
	};
	switch (g.kind)
	{
	case GenKind::Xpair:
		return "x[" + std::to_string(g.i) + "," + std::to_string(g.j) + "]";
	case GenKind::Dpair:
		return "d[" + std::to_string(g.i) + "," + std::to_string(g.j) + "]";
	case GenKind::Pvec:
		return vec("p");
	case GenKind::Dvec:
		return vec("dv");
	case GenKind::Xvec:
		return vec("xa");
	case GenKind::DvecA:
		return vec("da");
	}
	return {};
}

enum class Mode
{
	Pair,    // H_n / H~_n: x_{mu nu}, d_{mu nu}
	PairVec, // H~_n extended by p_mu, d_mu
	Weyl     // A_m: x_a, d_a
};

inline std::string to_string(Mode m)
{
	switch (m)
	{
	case Mode::Pair:
		return "pair";
	case Mode::PairVec:
		return "pair-vec";
	case Mode::Weyl:
		return "weyl";
	}
	return {};
}

inline Mode parse_mode(std::string_view s)
{
	if (s == "pair")
		return Mode::Pair;
	if (s == "pair-vec")
		return Mode::PairVec;
	if (s == "weyl")
		return Mode::Weyl;
	throw std::invalid_argument("unknown algebra mode '" + std::string(s) +
	                            "'");
}

/// Algebra mode plus metric. Fixes the variable layout: V coordinate
/// variables followed by their V conjugate derivatives, each block in
/// generator order.
class Algebra
{
  public:
	Algebra(Mode mode, Metric metric) : mode_(mode), metric_(metric)
	{
		if (mode != Mode::Weyl && metric.dim() < 2)
			throw std::domain_error("Algebra: pair modes need n >= 2");
		if (mode == Mode::Weyl && metric.kind() != MetricKind::Euclidean)
			throw std::domain_error("Algebra: Weyl mode is Euclidean");
	}

	static Algebra heisenberg(int n, MetricKind k = MetricKind::Euclidean)
	{
		return {Mode::Pair, Metric(n, k)};
	}
	static Algebra extended(int n, MetricKind k = MetricKind::Minkowski)
	{
		return {Mode::PairVec, Metric(n, k)};
	}
	static Algebra weyl(int m) { return {Mode::Weyl, Metric::euclidean(m)}; }

	Mode mode() const { return mode_; }
	Metric const &metric() const { return metric_; }
	int dim() const { return metric_.dim(); }

	std::size_t pair_vars() const
	{
		return mode_ == Mode::Weyl ? 0 : pair_count(dim());
	}
	std::size_t vec_vars() const
	{
		return mode_ == Mode::Pair ? 0 : static_cast<std::size_t>(dim());
	}
	/// Number of conjugate (coordinate, derivative) pairs.
	std::size_t conjugates() const { return pair_vars() + vec_vars(); }
	std::size_t variables() const { return 2 * conjugates(); }

	bool contains(Generator const &g) const
	{
		auto in = [&](int k) { return 1 <= k && k <= dim(); };
		switch (g.kind)
		{
		case GenKind::Xpair:
		case GenKind::Dpair:
			return mode_ != Mode::Weyl && in(g.i) && in(g.j) && g.i < g.j;
		case GenKind::Pvec:
		case GenKind::Dvec:
			return mode_ == Mode::PairVec && in(g.i) && g.j == 0;
		case GenKind::Xvec:
		case GenKind::DvecA:
			return mode_ == Mode::Weyl && in(g.i) && g.j == 0;
		}
		return false;
	}

	std::size_t var_index(Generator const &g) const
	{
		if (!contains(g))
			throw std::invalid_argument("generator " + to_string(g) +
			                            " does not belong to this algebra");
		std::size_t const shift = g.is_derivative() ? conjugates() : 0;
		if (g.is_pair())
			return shift + pair_position(dim(), {g.i, g.j});
		return shift + pair_vars() + static_cast<std::size_t>(g.i - 1);
	}

	Generator generator(std::size_t var) const
	{
		bool const deriv = var >= conjugates();
		std::size_t k = deriv ? var - conjugates() : var;
		if (k < pair_vars())
		{
			auto p = pair_at(dim(), k);
			return {deriv ? GenKind::Dpair : GenKind::Xpair, p.lo, p.hi};
		}
		int const mu = static_cast<int>(k - pair_vars()) + 1;
		if (mode_ == Mode::Weyl)
			return {deriv ? GenKind::DvecA : GenKind::Xvec, mu};
		return {deriv ? GenKind::Dvec : GenKind::Pvec, mu};
	}

	/// s with [d_k, x_k] = s for conjugate pair k.
	int commutator_sign(std::size_t k) const
	{
		if (k < pair_vars())
		{
			auto p = pair_at(dim(), k);
			return metric_.diag(p.lo) * metric_.diag(p.hi);
		}
		return metric_.diag(static_cast<int>(k - pair_vars()) + 1);
	}

	friend bool operator==(Algebra const &, Algebra const &) = default;

  private:
	Mode mode_;
	Metric metric_;
};

/// Dense exponent vector over the algebra's variable layout.
class Monomial
{
  public:
	Monomial() = default;
	explicit Monomial(std::size_t variables) : exps_(variables, 0) {}

	std::size_t size() const { return exps_.size(); }
	std::uint8_t operator[](std::size_t k) const { return exps_[k]; }
	std::uint8_t &operator[](std::size_t k) { return exps_[k]; }
	std::span<std::uint8_t const> exponents() const { return exps_; }

	unsigned degree() const { return sum(0, exps_.size()); }
	unsigned x_degree() const { return sum(0, exps_.size() / 2); }
	unsigned d_degree() const { return sum(exps_.size() / 2, exps_.size()); }

	friend bool operator==(Monomial const &, Monomial const &) = default;

  private:
	unsigned sum(std::size_t b, std::size_t e) const
	{
		unsigned s = 0;
		for (std::size_t k = b; k < e; ++k)
			s += exps_[k];
		return s;
	}

	std::vector<std::uint8_t> exps_;
};

/// Graded order: lower total degree first, then lexicographic with a higher
/// power of an earlier generator first.
struct MonomialOrder
{
	bool operator()(Monomial const &a, Monomial const &b) const
	{
		unsigned const da = a.degree(), db = b.degree();
		if (da != db)
			return da < db;
		auto ea = a.exponents(), eb = b.exponents();
		return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(),
		                                    eb.end(), std::greater<>{});
	}
};

/// Element of the algebra in normal order (coordinates left of derivatives).
class NCPoly
{
  public:
	using Term = std::pair<Monomial, GaussianRational>;

	explicit NCPoly(Algebra alg) : alg_(std::move(alg)) {}

	static NCPoly constant(Algebra const &alg, GaussianRational c)
	{
		NCPoly p(alg);
		if (!c.is_zero())
			p.terms_.emplace_back(Monomial(alg.variables()), std::move(c));
		return p;
	}

	static NCPoly generator(Algebra const &alg, Generator const &g)
	{
		Monomial m(alg.variables());
		m[alg.var_index(g)] = 1;
		NCPoly p(alg);
		p.terms_.emplace_back(std::move(m), GaussianRational(1));
		return p;
	}

	/// x_{mu nu} with antisymmetry applied: x_{nu mu} = -x_{mu nu}, x_{mu mu} = 0.
	static NCPoly x(Algebra const &alg, int mu, int nu)
	{
		return pair_generator(alg, GenKind::Xpair, mu, nu);
	}
	static NCPoly d(Algebra const &alg, int mu, int nu)
	{
		return pair_generator(alg, GenKind::Dpair, mu, nu);
	}
	static NCPoly p(Algebra const &alg, int mu)
	{
		return generator(alg, {GenKind::Pvec, mu});
	}
	static NCPoly dv(Algebra const &alg, int mu)
	{
		return generator(alg, {GenKind::Dvec, mu});
	}
	static NCPoly xa(Algebra const &alg, int a)
	{
		return generator(alg, {GenKind::Xvec, a});
	}
	static NCPoly da(Algebra const &alg, int a)
	{
		return generator(alg, {GenKind::DvecA, a});
	}

	/// Sorts, merges equal monomials and drops zeros.
	static NCPoly from_terms(Algebra const &alg, std::vector<Term> terms)
	{
		NCPoly p(alg);
		std::sort(terms.begin(), terms.end(), [](Term const &a, Term const &b) {
			return MonomialOrder{}(a.first, b.first);
		});
		for (auto &t : terms)
		{
			if (t.first.size() != alg.variables())
				throw std::invalid_argument("NCPoly: monomial size mismatch");
			if (!p.terms_.empty() && p.terms_.back().first == t.first)
				p.terms_.back().second += t.second;
			else
			{
				if (!p.terms_.empty() && p.terms_.back().second.is_zero())
					p.terms_.pop_back();
				p.terms_.push_back(std::move(t));
			}
		}
		if (!p.terms_.empty() && p.terms_.back().second.is_zero())
			p.terms_.pop_back();
		return p;
	}

	Algebra const &algebra() const { return alg_; }
	std::span<Term const> terms() const { return terms_; }
	std::size_t size() const { return terms_.size(); }
	bool is_zero() const { return terms_.empty(); }

	GaussianRational coefficient(Monomial const &m) const
	{
		auto it = std::lower_bound(
		    terms_.begin(), terms_.end(), m,
		    [](Term const &t, Monomial const &k) { return MonomialOrder{}(t.first, k); });
		if (it != terms_.end() && it->first == m)
			return it->second;
		return {};
	}

	int max_d_degree() const
	{
		int d = -1;
		for (auto const &t : terms_)
			d = std::max(d, static_cast<int>(t.first.d_degree()));
		return d;
	}
	int max_x_degree() const
	{
		int d = -1;
		for (auto const &t : terms_)
			d = std::max(d, static_cast<int>(t.first.x_degree()));
		return d;
	}
	bool is_real() const
	{
		return std::all_of(terms_.begin(), terms_.end(),
		                   [](Term const &t) { return t.second.is_real(); });
	}

	NCPoly &operator+=(NCPoly const &o) { return *this = add(*this, o, 1); }
	NCPoly &operator-=(NCPoly const &o) { return *this = add(*this, o, -1); }
	NCPoly &operator*=(GaussianRational const &c)
	{
		if (c.is_zero())
			terms_.clear();
		for (auto &t : terms_)
			t.second *= c;
		return *this;
	}

	friend NCPoly operator+(NCPoly const &a, NCPoly const &b)
	{
		return add(a, b, 1);
	}
	friend NCPoly operator-(NCPoly const &a, NCPoly const &b)
	{
		return add(a, b, -1);
	}
	friend NCPoly operator-(NCPoly a) { return a *= GaussianRational(-1); }
	friend NCPoly operator*(GaussianRational const &c, NCPoly a)
	{
		return a *= c;
	}
	friend bool operator==(NCPoly const &a, NCPoly const &b)
	{
		return a.alg_ == b.alg_ && a.terms_ == b.terms_;
	}

	/// Mutable access for tests that corrupt coefficients on purpose.
	std::vector<Term> &raw_terms() { return terms_; }

  private:
	static NCPoly pair_generator(Algebra const &alg, GenKind kind, int mu,
	                             int nu)
	{
		auto c = PairIndex::canonical(mu, nu);
		if (!c)
			return NCPoly(alg);
		NCPoly g = generator(alg, {kind, c->first.lo, c->first.hi});
		return c->second > 0 ? g : -g;
	}

	static NCPoly add(NCPoly const &a, NCPoly const &b, int sign)
	{
		if (!(a.alg_ == b.alg_))
			throw std::invalid_argument("NCPoly: algebra mismatch");
		NCPoly r(a.alg_);
		r.terms_.reserve(a.terms_.size() + b.terms_.size());
		MonomialOrder less;
		auto ia = a.terms_.begin(), ib = b.terms_.begin();
		while (ia != a.terms_.end() || ib != b.terms_.end())
		{
			if (ib == b.terms_.end() ||
			    (ia != a.terms_.end() && less(ia->first, ib->first)))
				r.terms_.push_back(*ia++);
			else if (ia == a.terms_.end() || less(ib->first, ia->first))
			{
				r.terms_.push_back(*ib++);
				if (sign < 0)
					r.terms_.back().second = -r.terms_.back().second;
			}
			else
			{
				GaussianRational c =
				    sign > 0 ? ia->second + ib->second : ia->second - ib->second;
				if (!c.is_zero())
					r.terms_.emplace_back(ia->first, std::move(c));
				++ia;
				++ib;
			}
		}
		return r;
	}

	Algebra alg_;
	std::vector<Term> terms_;
};

inline NCPoly operator*(NCPoly const &a, NCPoly const &b);

/// Drops every term of d-degree above dmax.
inline NCPoly truncate(NCPoly const &a, int dmax)
{
	std::vector<NCPoly::Term> kept;
	for (auto const &t : a.terms())
		if (static_cast<int>(t.first.d_degree()) <= dmax)
			kept.push_back(t);
	return NCPoly::from_terms(a.algebra(), std::move(kept));
}

namespace detail
{

inline std::uint8_t add_exp(unsigned a, unsigned b)
{
	unsigned const s = a + b;
	if (s > 255)
		throw std::overflow_error("Monomial: exponent overflow");
	return static_cast<std::uint8_t>(s);
}

} // namespace detail

/// Normal-ordered product, keeping only terms of d-degree <= dmax
/// (dmax < 0: no limit).
///
/// With [d_k, x_k] = s_k for each conjugate pair and all other generators
/// commuting,
///   d^b x^c = sum_j binom(b,j) binom(c,j) j! s^j x^{c-j} d^{b-j}
/// per variable, which is applied to every pair of terms.
inline NCPoly mul(NCPoly const &a, NCPoly const &b, int dmax = -1)
{
	if (!(a.algebra() == b.algebra()))
		throw std::invalid_argument("mul: algebra mismatch");
	Algebra const &alg = a.algebra();
	std::size_t const v = alg.conjugates();
	std::vector<int> sign(v);
	for (std::size_t k = 0; k < v; ++k)
		sign[k] = alg.commutator_sign(k);

	std::vector<NCPoly::Term> out;
	std::vector<std::size_t> active;
	std::vector<unsigned> kvec;
	for (auto const &[ma, ca] : a.terms())
	{
		unsigned const da = ma.d_degree();
		for (auto const &[mb, cb] : b.terms())
		{
			unsigned const base = da + mb.d_degree();
			active.clear();
			unsigned max_contract = 0;
			for (std::size_t k = 0; k < v; ++k)
				if (ma[v + k] > 0 && mb[k] > 0)
				{
					active.push_back(k);
					max_contract += std::min(ma[v + k], mb[k]);
				}
			if (dmax >= 0 && static_cast<int>(base - max_contract) > dmax)
				continue;
			GaussianRational const cab = ca * cb;
			kvec.assign(active.size(), 0);
			while (true)
			{
				unsigned contracted = 0;
				for (unsigned k : kvec)
					contracted += k;
				if (dmax < 0 || static_cast<int>(base - contracted) <= dmax)
				{
					Monomial m(alg.variables());
					for (std::size_t k = 0; k < v; ++k)
					{
						m[k] = detail::add_exp(ma[k], mb[k]);
						m[v + k] = detail::add_exp(ma[v + k], mb[v + k]);
					}
					Integer factor = 1;
					for (std::size_t q = 0; q < active.size(); ++q)
					{
						unsigned const j = kvec[q];
						if (j == 0)
							continue;
						std::size_t const k = active[q];
						factor *= binomial(ma[v + k], j) * binomial(mb[k], j) *
						          factorial(j);
						if (sign[k] < 0 && j % 2 == 1)
							factor = -factor;
						m[k] = static_cast<std::uint8_t>(m[k] - j);
						m[v + k] = static_cast<std::uint8_t>(m[v + k] - j);
					}
					GaussianRational c = cab;
					if (factor != 1)
						c *= Rational(factor);
					out.emplace_back(std::move(m), std::move(c));
				}
				// odometer over 0 <= k_q <= min(beta, gamma)
				std::size_t q = 0;
				for (; q < active.size(); ++q)
				{
					std::size_t const k = active[q];
					if (kvec[q] < std::min(ma[v + k], mb[k]))
					{
						++kvec[q];
						break;
					}
					kvec[q] = 0;
				}
				if (q == active.size())
					break;
			}
		}
	}
	return NCPoly::from_terms(alg, std::move(out));
}

inline NCPoly operator*(NCPoly const &a, NCPoly const &b) { return mul(a, b); }

inline NCPoly commutator(NCPoly const &a, NCPoly const &b, int dmax = -1)
{
	return mul(a, b, dmax) - mul(b, a, dmax);
}

inline NCPoly power(NCPoly const &a, unsigned k, int dmax = -1)
{
	NCPoly r = NCPoly::constant(a.algebra(), 1);
	for (unsigned j = 0; j < k; ++j)
		r = mul(r, a, dmax);
	return r;
}

/// Commutative polynomial in coordinate generators only.
class PolyState
{
  public:
	explicit PolyState(NCPoly poly) : poly_(std::move(poly))
	{
		for (auto const &t : poly_.terms())
			if (t.first.d_degree() != 0)
				throw std::invalid_argument(
				    "PolyState: derivative generators are not allowed");
	}
	static PolyState one(Algebra const &alg)
	{
		return PolyState(NCPoly::constant(alg, 1));
	}

	NCPoly const &poly() const { return poly_; }
	Algebra const &algebra() const { return poly_.algebra(); }

	friend bool operator==(PolyState const &, PolyState const &) = default;

  private:
	NCPoly poly_;
};

/// op |> f: coordinates multiply, each derivative acts as the formal
/// derivative scaled by the sign of its [d, x] relation.
inline PolyState act(NCPoly const &op, PolyState const &state)
{
	if (!(op.algebra() == state.algebra()))
		throw std::invalid_argument("act: algebra mismatch");
	Algebra const &alg = op.algebra();
	std::size_t const v = alg.conjugates();
	std::vector<NCPoly::Term> out;
	for (auto const &[mo, co] : op.terms())
		for (auto const &[ms, cs] : state.poly().terms())
		{
			Integer factor = 1;
			Monomial m(alg.variables());
			bool vanishes = false;
			for (std::size_t k = 0; k < v && !vanishes; ++k)
			{
				unsigned const beta = mo[v + k], gamma = ms[k];
				if (beta > gamma)
				{
					vanishes = true;
					break;
				}
				if (beta > 0)
				{
					factor *= factorial(gamma) / factorial(gamma - beta);
					if (alg.commutator_sign(k) < 0 && beta % 2 == 1)
						factor = -factor;
				}
				m[k] = detail::add_exp(mo[k], gamma - beta);
			}
			if (vanishes)
				continue;
			GaussianRational c = co * cs;
			c *= Rational(factor);
			out.emplace_back(std::move(m), std::move(c));
		}
	return PolyState(NCPoly::from_terms(alg, std::move(out)));
}

// ---------------------------------------------------------------------------
// text form

inline std::string to_string(Algebra const &alg, Monomial const &m)
{
	std::string s;
	for (std::size_t k = 0; k < m.size(); ++k)
	{
		if (m[k] == 0)
			continue;
		if (!s.empty())
			s += "*";
		s += to_string(alg.generator(k));
		if (m[k] > 1)
			s += "^" + std::to_string(m[k]);
	}
	return s.empty() ? "1" : s;
}

/// "(c)*mono + (c)*mono ..."; "0" for the zero element.
inline std::string to_string(NCPoly const &p)
{
	if (p.is_zero())
		return "0";
	std::string s;
	for (auto const &[m, c] : p.terms())
	{
		if (!s.empty())
			s += " + ";
		s += "(" + to_string(c) + ")*" + to_string(p.algebra(), m);
	}
	return s;
}

namespace detail
{

class PolyParser
{
  public:
	PolyParser(Algebra const &alg, std::string_view text)
	    : alg_(alg), text_(text)
	{}

	NCPoly parse_sum()
	{
		NCPoly sum(alg_);
		skip_ws();
		if (consume("0") && at_end())
			return sum;
		pos_ = 0;
		while (true)
		{
			skip_ws();
			int sign = 1;
			if (consume("-"))
				sign = -1;
			else
				consume("+");
			skip_ws();
			NCPoly t = parse_term();
			sum += sign > 0 ? t : -t;
			skip_ws();
			if (at_end())
				return sum;
			if (peek() != '+' && peek() != '-')
				fail("expected '+' or '-'");
		}
	}

	NCPoly parse_monomial()
	{
		NCPoly r = parse_factor();
		while (consume("*"))
			r = r * parse_factor();
		return r;
	}

	bool at_end() const { return pos_ >= text_.size(); }
	[[noreturn]] void fail(std::string const &what) const
	{
		throw std::invalid_argument("parse error at " + std::to_string(pos_) +
		                            " in '" + std::string(text_) + "': " + what);
	}

  private:
	NCPoly parse_term()
	{
		GaussianRational coef = 1;
		if (consume("("))
		{
			std::size_t close = text_.find(')', pos_);
			if (close == std::string_view::npos)
				fail("unclosed '('");
			coef = parse_gaussian(text_.substr(pos_, close - pos_));
			pos_ = close + 1;
			if (!consume("*"))
				return NCPoly::constant(alg_, coef);
		}
		else if (std::isdigit(static_cast<unsigned char>(peek())))
		{
			std::size_t b = pos_;
			while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) ||
			                     peek() == '/'))
				++pos_;
			coef = parse_rational(text_.substr(b, pos_ - b));
			if (!consume("*"))
				return NCPoly::constant(alg_, coef);
		}
		return coef * parse_monomial();
	}

	NCPoly parse_factor()
	{
		skip_ws();
		NCPoly g = parse_generator();
		if (consume("^"))
		{
			std::size_t b = pos_;
			while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
				++pos_;
			if (b == pos_)
				fail("expected exponent");
			g = power(g, static_cast<unsigned>(
			                 std::stoul(std::string(text_.substr(b, pos_ - b)))));
		}
		return g;
	}

	NCPoly parse_generator()
	{
		if (consume("1") )
			return NCPoly::constant(alg_, 1);
		std::size_t b = pos_;
		while (!at_end() && std::isalpha(static_cast<unsigned char>(peek())))
			++pos_;
		std::string name(text_.substr(b, pos_ - b));
		if (!consume("["))
			fail("expected '['");
		int i = parse_int();
		int j = 0;
		bool pair = false;
		if (consume(","))
		{
			j = parse_int();
			pair = true;
		}
		if (!consume("]"))
			fail("expected ']'");
		if (pair && name == "x")
			return checked_pair(GenKind::Xpair, i, j);
		if (pair && name == "d")
			return checked_pair(GenKind::Dpair, i, j);
		if (!pair && name == "p")
			return NCPoly::generator(alg_, {GenKind::Pvec, i});
		if (!pair && name == "dv")
			return NCPoly::generator(alg_, {GenKind::Dvec, i});
		if (!pair && name == "xa")
			return NCPoly::generator(alg_, {GenKind::Xvec, i});
		if (!pair && name == "da")
			return NCPoly::generator(alg_, {GenKind::DvecA, i});
		fail("unknown generator '" + name + "'");
	}

	NCPoly checked_pair(GenKind kind, int i, int j)
	{
		if (i < 1 || j < 1 || i > alg_.dim() || j > alg_.dim())
			fail("pair index out of range");
		return kind == GenKind::Xpair ? NCPoly::x(alg_, i, j)
		                              : NCPoly::d(alg_, i, j);
	}

	int parse_int()
	{
		std::size_t b = pos_;
		while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
			++pos_;
		if (b == pos_)
			fail("expected integer");
		return std::stoi(std::string(text_.substr(b, pos_ - b)));
	}

	char peek() const { return at_end() ? '\0' : text_[pos_]; }
	void skip_ws()
	{
		while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
			++pos_;
	}
	bool consume(std::string_view tok)
	{
		if (text_.substr(pos_, tok.size()) == tok)
		{
			pos_ += tok.size();
			return true;
		}
		return false;
	}

	Algebra const &alg_;
	std::string_view text_;
	std::size_t pos_ = 0;
};

} // namespace detail

/// Parses the output of to_string(NCPoly); generators with swapped pair
/// indices are normalized (x[2,1] -> -x[1,2], x[1,1] -> 0).
inline NCPoly parse_poly(Algebra const &alg, std::string_view text)
{
	return detail::PolyParser(alg, text).parse_sum();
}

/// Parses a product of generators such as "x[1,2]*d[1,3]^2" or "1".
inline NCPoly parse_monomial(Algebra const &alg, std::string_view text)
{
	detail::PolyParser p(alg, text);
	NCPoly m = p.parse_monomial();
	if (!p.at_end())
		p.fail("trailing input");
	return m;
}

} // namespace genheis

#endif
