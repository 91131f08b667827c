#ifndef GENHEIS_REALIZE_HPP
#define GENHEIS_REALIZE_HPP

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "genheis/exactnum.hpp"
#include "genheis/ncalgebra.hpp"
#include "genheis/opmatrix.hpp"

namespace genheis
{

// ---------------------------------------------------------------------------
// labels and presentations

enum class LabelKind : std::uint8_t
{
	M,      // rotation M_{mu nu}, canonical mu < nu
	Lambda, // quantum angle Lambda_{mu nu}, unrestricted
	P,      // translation P_mu
	X,      // generic Lie generator X_mu
	Ma      // rotation in the A_N basis, M_a
};

struct GeneratorLabel
{
	LabelKind kind;
	int i;
	int j = 0;

	static GeneratorLabel m(int mu, int nu) { return {LabelKind::M, mu, nu}; }
	static GeneratorLabel lambda(int mu, int nu)
	{
		return {LabelKind::Lambda, mu, nu};
	}
	static GeneratorLabel p(int mu) { return {LabelKind::P, mu}; }
	static GeneratorLabel x(int mu) { return {LabelKind::X, mu}; }
	static GeneratorLabel ma(int a) { return {LabelKind::Ma, a}; }

	friend auto operator<=>(GeneratorLabel const &,
	                        GeneratorLabel const &) = default;
};

inline std::string to_string(GeneratorLabel const &l)
{
	auto one = [&](char const *name) {
		return std::string(name) + "[" + std::to_string(l.i) + "]";
	};
	switch (l.kind)
	{
	case LabelKind::M:
		return "M[" + std::to_string(l.i) + "," + std::to_string(l.j) + "]";
	case LabelKind::Lambda:
		return "L[" + std::to_string(l.i) + "," + std::to_string(l.j) + "]";
	case LabelKind::P:
		return one("P");
	case LabelKind::X:
		return one("X");
	case LabelKind::Ma:
		return one("Ma");
	}
	return {};
}

inline GeneratorLabel parse_label(std::string_view s)
{
	auto bad = [&] {
		return std::invalid_argument("malformed generator label '" +
		                             std::string(s) + "'");
	};
	auto open = s.find('[');
	if (open == std::string_view::npos || s.back() != ']')
		throw bad();
	std::string name(s.substr(0, open));
	std::string body(s.substr(open + 1, s.size() - open - 2));
	auto comma = body.find(',');
	try
	{
		if (comma != std::string::npos)
		{
			int i = std::stoi(body.substr(0, comma));
			int j = std::stoi(body.substr(comma + 1));
			if (name == "M")
				return GeneratorLabel::m(i, j);
			if (name == "L")
				return GeneratorLabel::lambda(i, j);
		}
		else
		{
			int i = std::stoi(body);
			if (name == "P")
				return GeneratorLabel::p(i);
			if (name == "X")
				return GeneratorLabel::x(i);
			if (name == "Ma")
				return GeneratorLabel::ma(i);
		}
	}
	catch (std::logic_error const &)
	{
		throw bad();
	}
	throw bad();
}

/// Scalar combination of generator labels, canonical: sorted, merged, no
/// zero coefficients, M labels with lo < hi.
using LinearCombination = std::vector<std::pair<GaussianRational, GeneratorLabel>>;

namespace detail
{

inline void push_term(LinearCombination &lc, GaussianRational c,
                      GeneratorLabel l)
{
	if (l.kind == LabelKind::M)
	{
		auto p = PairIndex::canonical(l.i, l.j);
		if (!p)
			return;
		l = GeneratorLabel::m(p->first.lo, p->first.hi);
		if (p->second < 0)
			c = -c;
	}
	lc.emplace_back(std::move(c), l);
}

inline LinearCombination canonical(LinearCombination lc)
{
	std::sort(lc.begin(), lc.end(),
	          [](auto const &a, auto const &b) { return a.second < b.second; });
	LinearCombination out;
	for (auto &t : lc)
	{
		if (!out.empty() && out.back().second == t.second)
			out.back().first += t.first;
		else
		{
			if (!out.empty() && out.back().first.is_zero())
				out.pop_back();
			out.push_back(std::move(t));
		}
	}
	if (!out.empty() && out.back().first.is_zero())
		out.pop_back();
	return out;
}

} // namespace detail

/// Structure constants C_{mu nu a} of an m-dimensional Lie algebra,
/// [X_mu, X_nu] = sum_a C_{mu nu a} X_a; indices 1-based.
class StructureConstants
{
  public:
	explicit StructureConstants(int m)
	    : m_(m), c_(static_cast<std::size_t>(m) * m * m)
	{
		if (m < 1)
			throw std::domain_error("StructureConstants: empty algebra");
	}

	int dim() const { return m_; }
	GaussianRational const &operator()(int mu, int nu, int a) const
	{
		return c_[index(mu, nu, a)];
	}
	GaussianRational &operator()(int mu, int nu, int a)
	{
		return c_[index(mu, nu, a)];
	}

	bool antisymmetric() const
	{
		for (int mu = 1; mu <= m_; ++mu)
			for (int nu = 1; nu <= m_; ++nu)
				for (int a = 1; a <= m_; ++a)
					if (!((*this)(mu, nu, a) + (*this)(nu, mu, a)).is_zero())
						return false;
		return true;
	}

	/// sum_r C_{mu a r} C_{r b nu} + C_{a b r} C_{r mu nu} + C_{b mu r} C_{r a nu} = 0
	bool jacobi() const
	{
		for (int mu = 1; mu <= m_; ++mu)
			for (int a = 1; a <= m_; ++a)
				for (int b = 1; b <= m_; ++b)
					for (int nu = 1; nu <= m_; ++nu)
					{
						GaussianRational s;
						for (int r = 1; r <= m_; ++r)
							s += (*this)(mu, a, r) * (*this)(r, b, nu) +
							     (*this)(a, b, r) * (*this)(r, mu, nu) +
							     (*this)(b, mu, r) * (*this)(r, a, nu);
						if (!s.is_zero())
							return false;
					}
		return true;
	}

	friend bool operator==(StructureConstants const &,
	                       StructureConstants const &) = default;

  private:
	std::size_t index(int mu, int nu, int a) const
	{
		if (mu < 1 || nu < 1 || a < 1 || mu > m_ || nu > m_ || a > m_)
			throw std::out_of_range("StructureConstants: index out of range");
		return (static_cast<std::size_t>(mu - 1) * m_ + (nu - 1)) * m_ + (a - 1);
	}

	int m_;
	std::vector<GaussianRational> c_;
};

/// kappa-Minkowski: [X_mu, X_nu] = i (a_mu X_nu - a_nu X_mu).
inline StructureConstants kappa_constants(std::vector<Rational> const &a)
{
	int const n = static_cast<int>(a.size());
	StructureConstants c(n);
	for (int mu = 1; mu <= n; ++mu)
		for (int nu = 1; nu <= n; ++nu)
		{
			if (mu == nu)
				continue;
			c(mu, nu, nu) += GaussianRational(0, a[mu - 1]);
			c(mu, nu, mu) -= GaussianRational(0, a[nu - 1]);
		}
	return c;
}

enum class PresentationKind
{
	So,
	Lorentz,
	ExtendedSo,
	ExtendedLorentz,
	Poincare,
	ExtendedPoincare,
	KappaMinkowski,
	Custom
};

inline std::string to_string(PresentationKind k)
{
	switch (k)
	{
	case PresentationKind::So:
		return "so";
	case PresentationKind::Lorentz:
		return "lorentz";
	case PresentationKind::ExtendedSo:
		return "extended-so";
	case PresentationKind::ExtendedLorentz:
		return "extended-lorentz";
	case PresentationKind::Poincare:
		return "poincare";
	case PresentationKind::ExtendedPoincare:
		return "extended-poincare";
	case PresentationKind::KappaMinkowski:
		return "kappa";
	case PresentationKind::Custom:
		return "custom";
	}
	return {};
}

/// Target Lie bracket [g1, g2] as a combination of generator labels.
class LiePresentation
{
  public:
	static LiePresentation so(int n)
	{
		return rotations(PresentationKind::So, Metric::euclidean(n), false, false);
	}
	static LiePresentation lorentz(int n)
	{
		return rotations(PresentationKind::Lorentz, Metric::minkowski(n), false,
		                 false);
	}
	static LiePresentation extended_so(int n)
	{
		return rotations(PresentationKind::ExtendedSo, Metric::euclidean(n),
		                 true, false);
	}
	static LiePresentation extended_lorentz(int n)
	{
		return rotations(PresentationKind::ExtendedLorentz, Metric::minkowski(n),
		                 true, false);
	}
	static LiePresentation poincare(int n)
	{
		return rotations(PresentationKind::Poincare, Metric::minkowski(n), false,
		                 true);
	}
	static LiePresentation extended_poincare(int n)
	{
		return rotations(PresentationKind::ExtendedPoincare,
		                 Metric::minkowski(n), true, true);
	}
	static LiePresentation kappa(std::vector<Rational> const &a)
	{
		LiePresentation p = custom(kappa_constants(a));
		p.kind_ = PresentationKind::KappaMinkowski;
		return p;
	}

	/// Generators X_1..X_m with the given constants; throws std::domain_error
	/// unless they are antisymmetric and satisfy the Jacobi identity.
	static LiePresentation custom(StructureConstants const &c)
	{
		if (!c.antisymmetric())
			throw std::domain_error("structure constants are not antisymmetric");
		if (!c.jacobi())
			throw std::domain_error("structure constants violate Jacobi");
		LiePresentation p(PresentationKind::Custom, Metric::euclidean(c.dim()));
		for (int mu = 1; mu <= c.dim(); ++mu)
			p.labels_.push_back(GeneratorLabel::x(mu));
		p.constants_ = c;
		return p;
	}

	/// Presentation given by an explicit bracket table on the listed labels.
	static LiePresentation from_table(
	    std::vector<GeneratorLabel> labels,
	    std::map<std::pair<GeneratorLabel, GeneratorLabel>, LinearCombination>
	        table)
	{
		LiePresentation p(PresentationKind::Custom, Metric::euclidean(1));
		std::sort(labels.begin(), labels.end());
		p.labels_ = std::move(labels);
		p.table_ = std::move(table);
		return p;
	}

	PresentationKind kind() const { return kind_; }
	Metric const &metric() const { return metric_; }
	int dim() const { return metric_.dim(); }
	std::vector<GeneratorLabel> const &generators() const { return labels_; }

	LinearCombination bracket(GeneratorLabel const &g1,
	                          GeneratorLabel const &g2) const
	{
		LinearCombination lc;
		if (constants_)
		{
			if (g1.kind != LabelKind::X || g2.kind != LabelKind::X)
				throw std::invalid_argument("bracket: label not in presentation");
			for (int a = 1; a <= constants_->dim(); ++a)
				detail::push_term(lc, (*constants_)(g1.i, g2.i, a),
				                  GeneratorLabel::x(a));
			return detail::canonical(std::move(lc));
		}
		if (table_)
		{
			if (auto it = table_->find({g1, g2}); it != table_->end())
				return detail::canonical(it->second);
			if (auto it = table_->find({g2, g1}); it != table_->end())
			{
				for (auto const &[c, l] : it->second)
					lc.emplace_back(-c, l);
				return detail::canonical(std::move(lc));
			}
			return {};
		}
		return rotation_bracket(g1, g2);
	}

  private:
	LiePresentation(PresentationKind kind, Metric metric)
	    : kind_(kind), metric_(metric)
	{}

	static LiePresentation rotations(PresentationKind kind, Metric g,
	                                 bool angles, bool translations)
	{
		if (g.dim() < 2)
			throw std::domain_error("presentation: n must be at least 2");
		LiePresentation p(kind, g);
		p.angles_ = angles;
		p.translations_ = translations;
		int const n = g.dim();
		for (int mu = 1; mu <= n; ++mu)
			for (int nu = mu + 1; nu <= n; ++nu)
				p.labels_.push_back(GeneratorLabel::m(mu, nu));
		if (angles)
			for (int mu = 1; mu <= n; ++mu)
				for (int nu = 1; nu <= n; ++nu)
					p.labels_.push_back(GeneratorLabel::lambda(mu, nu));
		if (translations)
			for (int mu = 1; mu <= n; ++mu)
				p.labels_.push_back(GeneratorLabel::p(mu));
		std::sort(p.labels_.begin(), p.labels_.end());
		return p;
	}

	bool has(GeneratorLabel const &l) const
	{
		switch (l.kind)
		{
		case LabelKind::M:
			return true;
		case LabelKind::Lambda:
			return angles_;
		case LabelKind::P:
			return translations_;
		default:
			return false;
		}
	}

	LinearCombination rotation_bracket(GeneratorLabel const &a,
	                                   GeneratorLabel const &b) const
	{
		if (!has(a) || !has(b))
			throw std::invalid_argument("bracket: label not in presentation");
		Metric const &g = metric_;
		LinearCombination lc;
		auto add = [&](int c, GeneratorLabel l) {
			if (c != 0)
				detail::push_term(lc, GaussianRational(c), l);
		};
		if (a.kind == LabelKind::M && b.kind == LabelKind::M)
		{
			int mu = a.i, nu = a.j, la = b.i, rho = b.j;
			add(g(nu, la), GeneratorLabel::m(mu, rho));
			add(-g(mu, la), GeneratorLabel::m(nu, rho));
			add(-g(nu, rho), GeneratorLabel::m(mu, la));
			add(g(mu, rho), GeneratorLabel::m(nu, la));
		}
		else if (a.kind == LabelKind::M && b.kind == LabelKind::Lambda)
		{
			int mu = a.i, nu = a.j, rho = b.i, sigma = b.j;
			add(g(rho, nu), GeneratorLabel::lambda(mu, sigma));
			add(-g(rho, mu), GeneratorLabel::lambda(nu, sigma));
		}
		else if (a.kind == LabelKind::M && b.kind == LabelKind::P)
		{
			int mu = a.i, nu = a.j, la = b.i;
			add(g(nu, la), GeneratorLabel::p(mu));
			add(-g(mu, la), GeneratorLabel::p(nu));
		}
		else if (b.kind == LabelKind::M)
		{
			for (auto &[c, l] : rotation_bracket(b, a))
				lc.emplace_back(-c, l);
		}
		// P-P, P-Lambda, Lambda-Lambda commute
		return detail::canonical(std::move(lc));
	}

	PresentationKind kind_;
	Metric metric_;
	std::vector<GeneratorLabel> labels_;
	bool angles_ = false;
	bool translations_ = false;
	std::optional<StructureConstants> constants_;
	std::optional<std::map<std::pair<GeneratorLabel, GeneratorLabel>,
	                       LinearCombination>>
	    table_;
};

/// so(n) bracket table assembled from the pair-indexed structure constants
/// C_{(mu nu)(la rho)(a b)}, summed over ordered (a, b).
inline Rational so_structure_constant(int mu, int nu, int la, int rho, int a,
                                      int b)
{
	auto d = [](int x, int y) { return x == y ? 1 : 0; };
	int const twice = (d(mu, a) * d(rho, b) - d(mu, b) * d(rho, a)) * d(nu, la) -
	                  (d(nu, a) * d(rho, b) - d(nu, b) * d(rho, a)) * d(mu, la) +
	                  (d(la, a) * d(mu, b) - d(la, b) * d(mu, a)) * d(nu, rho) -
	                  (d(la, a) * d(nu, b) - d(la, b) * d(nu, a)) * d(mu, rho);
	return make_rational(twice, 2);
}

inline LiePresentation so_from_structure_constants(int n)
{
	std::vector<GeneratorLabel> labels;
	for (int mu = 1; mu <= n; ++mu)
		for (int nu = mu + 1; nu <= n; ++nu)
			labels.push_back(GeneratorLabel::m(mu, nu));
	std::map<std::pair<GeneratorLabel, GeneratorLabel>, LinearCombination> table;
	for (auto const &x : labels)
		for (auto const &y : labels)
		{
			LinearCombination lc;
			for (int a = 1; a <= n; ++a)
				for (int b = 1; b <= n; ++b)
				{
					Rational c = so_structure_constant(x.i, x.j, y.i, y.j, a, b);
					if (c != 0)
						detail::push_term(lc, c, GeneratorLabel::m(a, b));
				}
			table[{x, y}] = detail::canonical(std::move(lc));
		}
	return LiePresentation::from_table(labels, std::move(table));
}

// ---------------------------------------------------------------------------
// realizations

/// Generator label -> truncated normal-ordered series.
class Realization
{
  public:
	Realization(std::string name, Algebra alg, int degree)
	    : name_(std::move(name)), alg_(std::move(alg)), degree_(degree)
	{}

	std::string const &name() const { return name_; }
	Algebra const &algebra() const { return alg_; }
	int degree() const { return degree_; }
	std::map<GeneratorLabel, NCPoly> const &values() const { return values_; }
	std::map<GeneratorLabel, NCPoly> &values() { return values_; }

	bool contains(GeneratorLabel const &l) const { return values_.count(l) > 0; }

	NCPoly const &at(GeneratorLabel const &l) const
	{
		auto it = values_.find(l);
		if (it == values_.end())
			throw std::out_of_range("realization missing label " + to_string(l));
		return it->second;
	}

	void set(GeneratorLabel const &l, NCPoly v)
	{
		if (!(v.algebra() == alg_))
			throw std::invalid_argument("Realization: value in a foreign algebra");
		values_.insert_or_assign(l, std::move(v));
	}

	/// Image of a label combination.
	NCPoly evaluate(LinearCombination const &lc) const
	{
		NCPoly r(alg_);
		for (auto const &[c, l] : lc)
			r += c * at(l);
		return r;
	}

	void merge(Realization const &o)
	{
		if (!(o.alg_ == alg_))
			throw std::invalid_argument("Realization: merge across algebras");
		for (auto const &[l, v] : o.values_)
			values_.insert_or_assign(l, v);
		degree_ = std::min(degree_, o.degree_);
	}

	friend bool operator==(Realization const &, Realization const &) = default;

  private:
	std::string name_;
	Algebra alg_;
	int degree_;
	std::map<GeneratorLabel, NCPoly> values_;
};

namespace detail
{

inline void require_degree(int d)
{
	if (d < 0)
		throw std::domain_error("truncation degree must be non-negative");
}

/// sum over ordered (a, b) of x_{a b} g_{a a'} g_{b b'} psi_{(mu nu)(a' b')},
/// i.e. twice the canonical-pair sum weighted by the pair metric sign.
inline NCPoly contract_pair_coords(Algebra const &alg, OpMatrix const &psi,
                                   std::size_t row)
{
	int const n = alg.dim();
	NCPoly acc(alg);
	for (std::size_t c = 0; c < pair_count(n); ++c)
	{
		if (psi.at(row, c).is_zero())
			continue;
		auto [a, b] = pair_at(n, c);
		NCPoly t = NCPoly::x(alg, a, b) * psi.at(row, c);
		t *= GaussianRational(contraction_weight(Space::pair(n), alg.metric(), c));
		acc += t;
	}
	return acc;
}

/// sum_a p_a eta_{a a'} psi_{row, a'}
inline NCPoly contract_momenta(Algebra const &alg, OpMatrix const &psi,
                               std::size_t row)
{
	NCPoly acc(alg);
	for (int a = 1; a <= alg.dim(); ++a)
	{
		NCPoly const &e = psi.at(row, static_cast<std::size_t>(a - 1));
		if (e.is_zero())
			continue;
		NCPoly t = NCPoly::p(alg, a) * e;
		t *= GaussianRational(alg.metric().diag(a));
		acc += t;
	}
	return acc;
}

inline Realization realize_rotations(std::string name, Algebra const &alg,
                                     int degree)
{
	require_degree(degree);
	OpMatrix psi = psi_of(k_matrix(alg), degree);
	Realization r(std::move(name), alg, degree);
	int const n = alg.dim();
	for (std::size_t row = 0; row < pair_count(n); ++row)
	{
		auto [mu, nu] = pair_at(n, row);
		r.set(GeneratorLabel::m(mu, nu), contract_pair_coords(alg, psi, row));
	}
	return r;
}

inline Realization realize_angles(std::string name, Algebra const &alg,
                                  int degree)
{
	require_degree(degree);
	OpMatrix e = exp_partial(alg, degree);
	Realization r(std::move(name), alg, degree);
	for (int mu = 1; mu <= alg.dim(); ++mu)
		for (int nu = 1; nu <= alg.dim(); ++nu)
			r.set(GeneratorLabel::lambda(mu, nu), e.entry({mu}, {nu}));
	return r;
}

} // namespace detail

/// M_{mu nu} -> sum_{a b} x_{a b} psi(K)_{(mu nu)(a b)} in H_n.
inline Realization realize_so(int n, int degree)
{
	return detail::realize_rotations("so", Algebra::heisenberg(n), degree);
}

/// M_{mu nu} -> sum x_{a b} eta eta psi(K)_{(mu nu)(a' b')} in H~_n.
inline Realization realize_lorentz(int n, int degree)
{
	return detail::realize_rotations(
	    "lorentz", Algebra::heisenberg(n, MetricKind::Minkowski), degree);
}

/// Lambda_{mu nu} -> (e^d)_{mu nu}.
inline Realization realize_lambda(int n, MetricKind kind, int degree)
{
	return detail::realize_angles("lambda", Algebra::heisenberg(n, kind), degree);
}

inline Realization realize_extended(int n, MetricKind kind, int degree)
{
	Algebra alg = Algebra::heisenberg(n, kind);
	Realization r = detail::realize_rotations(
	    kind == MetricKind::Euclidean ? "extended-so" : "extended-lorentz", alg,
	    degree);
	r.merge(detail::realize_angles("lambda", alg, degree));
	return r;
}

/// P_mu and M_{mu nu} from psi of the block matrix in the extended algebra.
inline Realization realize_poincare(int n, int degree)
{
	detail::require_degree(degree);
	Algebra alg = Algebra::extended(n, MetricKind::Minkowski);
	BlockMatrix psi = psi_of(ktilde(alg), degree);
	Realization r("poincare", alg, degree);
	for (int mu = 1; mu <= n; ++mu)
		r.set(GeneratorLabel::p(mu),
		      detail::contract_momenta(alg, psi.a, static_cast<std::size_t>(mu - 1)));
	for (std::size_t row = 0; row < pair_count(n); ++row)
	{
		auto [mu, nu] = pair_at(n, row);
		r.set(GeneratorLabel::m(mu, nu),
		      detail::contract_pair_coords(alg, psi.d, row) +
		          detail::contract_momenta(alg, psi.c, row));
	}
	return r;
}

inline Realization realize_extended_poincare(int n, int degree)
{
	Realization p = realize_poincare(n, degree);
	Realization r("extended-poincare", p.algebra(), degree);
	r.merge(p);
	r.merge(detail::realize_angles("lambda", p.algebra(), degree));
	return r;
}

/// Matrix C_{mu nu} = sum_a C_{mu a nu} d_a over A_m.
inline OpMatrix adjoint_matrix(StructureConstants const &c)
{
	int const m = c.dim();
	Algebra alg = Algebra::weyl(m);
	OpMatrix mat(alg, Space::vec(m), Space::vec(m));
	for (int mu = 1; mu <= m; ++mu)
		for (int nu = 1; nu <= m; ++nu)
		{
			NCPoly e(alg);
			for (int a = 1; a <= m; ++a)
				if (!c(mu, a, nu).is_zero())
					e += c(mu, a, nu) * NCPoly::da(alg, a);
			mat.at(static_cast<std::size_t>(mu - 1), static_cast<std::size_t>(nu - 1)) =
			    std::move(e);
		}
	return mat;
}

/// Symmetric (Weyl) realization X_mu -> sum_a x_a psi(C)_{mu a} in A_m.
inline Realization realize_weyl_series(StructureConstants const &c, int degree)
{
	detail::require_degree(degree);
	if (!c.antisymmetric() || !c.jacobi())
		throw std::domain_error(
		    "realize_weyl_series: constants fail antisymmetry or Jacobi");
	int const m = c.dim();
	Algebra alg = Algebra::weyl(m);
	OpMatrix psi = psi_of(adjoint_matrix(c), degree);
	Realization r("weyl-generic", alg, degree);
	for (int mu = 1; mu <= m; ++mu)
	{
		NCPoly acc(alg);
		for (int a = 1; a <= m; ++a)
		{
			NCPoly const &e =
			    psi.at(static_cast<std::size_t>(mu - 1), static_cast<std::size_t>(a - 1));
			if (!e.is_zero())
				acc += NCPoly::xa(alg, a) * e;
		}
		r.set(GeneratorLabel::x(mu), std::move(acc));
	}
	return r;
}

namespace detail
{

/// Coefficients of sum_j t^j/(j+2)! divided by sum_j t^j/(j+1)!, i.e. the
/// series of (e^t - t - 1)/((e^t - 1) t), by exact long division.
inline std::vector<Rational> kappa_second_series(int degree)
{
	std::vector<Rational> num, den, q;
	for (int j = 0; j <= degree; ++j)
	{
		num.push_back(Rational(1) / Rational(factorial(static_cast<unsigned>(j + 2))));
		den.push_back(Rational(1) / Rational(factorial(static_cast<unsigned>(j + 1))));
	}
	for (int k = 0; k <= degree; ++k)
	{
		Rational s = num[static_cast<std::size_t>(k)];
		for (int j = 0; j < k; ++j)
			s -= q[static_cast<std::size_t>(j)] * den[static_cast<std::size_t>(k - j)];
		q.push_back(s / den[0]);
	}
	return q;
}

/// Series of t/(e^t - 1): inverse of sum_j t^j/(j+1)!.
inline std::vector<Rational> kappa_first_series(int degree)
{
	std::vector<Rational> den, q;
	for (int j = 0; j <= degree; ++j)
		den.push_back(Rational(1) / Rational(factorial(static_cast<unsigned>(j + 1))));
	for (int k = 0; k <= degree; ++k)
	{
		Rational s = k == 0 ? Rational(1) : Rational(0);
		for (int j = 0; j < k; ++j)
			s -= q[static_cast<std::size_t>(j)] * den[static_cast<std::size_t>(k - j)];
		q.push_back(s / den[0]);
	}
	return q;
}

} // namespace detail

/// Closed form for kappa-Minkowski:
/// X_mu = x_mu A/(e^A - 1) + i a_mu (x.d) (e^A - A - 1)/((e^A - 1) A),
/// A = i sum_k a_k d_k, Taylor-expanded to the given degree.
inline Realization realize_kappa_closed(std::vector<Rational> const &a,
                                        int degree)
{
	detail::require_degree(degree);
	int const n = static_cast<int>(a.size());
	if (n < 1)
		throw std::domain_error("realize_kappa_closed: empty kappa vector");
	Algebra alg = Algebra::weyl(n);
	NCPoly big_a(alg);
	NCPoly x_dot_d(alg);
	for (int k = 1; k <= n; ++k)
	{
		big_a += GaussianRational(0, a[static_cast<std::size_t>(k - 1)]) *
		         NCPoly::da(alg, k);
		x_dot_d += NCPoly::xa(alg, k) * NCPoly::da(alg, k);
	}
	auto first = detail::kappa_first_series(degree);
	auto second = detail::kappa_second_series(degree);
	NCPoly f(alg), g(alg);
	NCPoly ak = NCPoly::constant(alg, 1);
	for (int k = 0; k <= degree; ++k)
	{
		f += GaussianRational(first[static_cast<std::size_t>(k)]) * ak;
		if (k + 1 <= degree)
			g += GaussianRational(second[static_cast<std::size_t>(k)]) * ak;
		ak = ak * big_a;
	}
	Realization r("kappa", alg, degree);
	for (int mu = 1; mu <= n; ++mu)
	{
		NCPoly v = NCPoly::xa(alg, mu) * f +
		           GaussianRational(0, a[static_cast<std::size_t>(mu - 1)]) *
		               (x_dot_d * g);
		r.set(GeneratorLabel::x(mu), truncate(v, degree));
	}
	return r;
}

/// Weyl series realization for the kappa-Minkowski constants.
inline Realization realize_kappa_series(std::vector<Rational> const &a,
                                        int degree)
{
	Realization s = realize_weyl_series(kappa_constants(a), degree);
	Realization r("kappa", s.algebra(), degree);
	r.merge(s);
	return r;
}

// ---------------------------------------------------------------------------
// transformation coefficients between so(n) bases

/// Gamma_a^{mu nu}, antisymmetric in (mu, nu); a runs over 1..N with
/// N = n(n-1)/2. Construction checks
///   1/2 sum_{mu nu} Gamma_a^{mu nu} Gamma_b^{mu nu} = delta_ab,
///   sum_a Gamma_a^{mu nu} Gamma_a^{al be} = d_{mu al} d_{nu be} - d_{mu be} d_{nu al},
/// and derives the inverse coefficients Gamma^a_{mu nu} by exact inversion.
class GammaCoeffs
{
  public:
	/// upper[a-1][p] = Gamma_a^{pair p} on canonical pairs.
	GammaCoeffs(int n, std::vector<std::vector<Rational>> upper)
	    : n_(n), count_(static_cast<int>(pair_count(n))), upper_(std::move(upper))
	{
		if (n < 2)
			throw std::domain_error("GammaCoeffs: n must be at least 2");
		if (upper_.size() != static_cast<std::size_t>(count_))
			throw std::invalid_argument("GammaCoeffs: wrong number of rows");
		for (auto const &row : upper_)
			if (row.size() != static_cast<std::size_t>(count_))
				throw std::invalid_argument("GammaCoeffs: wrong row length");
		if (!orthonormal())
			throw std::domain_error("GammaCoeffs: orthonormality relation fails");
		if (!complete())
			throw std::domain_error("GammaCoeffs: completeness relation fails");
		lower_ = invert(upper_);
	}

	int n() const { return n_; }
	int count() const { return count_; }

	/// Gamma_a^{mu nu} for arbitrary (mu, nu).
	Rational upper(int a, int mu, int nu) const { return get(upper_, a, mu, nu, false); }
	/// Gamma^a_{mu nu} from the inverse transformation M_{mu nu} = sum_a Gamma^a_{mu nu} M_a.
	Rational lower(int a, int mu, int nu) const { return get(lower_, a, mu, nu, true); }

	bool orthonormal() const
	{
		for (int a = 1; a <= count_; ++a)
			for (int b = 1; b <= count_; ++b)
			{
				Rational s = 0;
				for (int mu = 1; mu <= n_; ++mu)
					for (int nu = 1; nu <= n_; ++nu)
						s += upper(a, mu, nu) * upper(b, mu, nu);
				if (s / 2 != (a == b ? 1 : 0))
					return false;
			}
		return true;
	}

	bool complete() const
	{
		for (int mu = 1; mu <= n_; ++mu)
			for (int nu = 1; nu <= n_; ++nu)
				for (int al = 1; al <= n_; ++al)
					for (int be = 1; be <= n_; ++be)
					{
						Rational s = 0;
						for (int a = 1; a <= count_; ++a)
							s += upper(a, mu, nu) * upper(a, al, be);
						int const want = (mu == al && nu == be ? 1 : 0) -
						                 (mu == be && nu == al ? 1 : 0);
						if (s != want)
							return false;
					}
		return true;
	}

  private:
	/// Stored as table[a-1][p] (upper) or table[p][a-1] (lower).
	Rational get(std::vector<std::vector<Rational>> const &t, int a, int mu,
	             int nu, bool lower) const
	{
		if (a < 1 || a > count_)
			throw std::out_of_range("GammaCoeffs: a out of range");
		auto c = PairIndex::canonical(mu, nu);
		if (!c)
			return 0;
		std::size_t const p = pair_position(n_, c->first);
		Rational const &v = lower ? t[p][static_cast<std::size_t>(a - 1)]
		                          : t[static_cast<std::size_t>(a - 1)][p];
		return c->second > 0 ? v : Rational(-v);
	}

	static std::vector<std::vector<Rational>>
	invert(std::vector<std::vector<Rational>> m)
	{
		std::size_t const k = m.size();
		std::vector<std::vector<Rational>> inv(k, std::vector<Rational>(k, 0));
		for (std::size_t i = 0; i < k; ++i)
			inv[i][i] = 1;
		for (std::size_t col = 0; col < k; ++col)
		{
			std::size_t piv = col;
			while (piv < k && m[piv][col] == 0)
				++piv;
			if (piv == k)
				throw std::domain_error("GammaCoeffs: singular transformation");
			std::swap(m[piv], m[col]);
			std::swap(inv[piv], inv[col]);
			Rational const d = m[col][col];
			for (std::size_t j = 0; j < k; ++j)
			{
				m[col][j] /= d;
				inv[col][j] /= d;
			}
			for (std::size_t r = 0; r < k; ++r)
			{
				if (r == col || m[r][col] == 0)
					continue;
				Rational const f = m[r][col];
				for (std::size_t j = 0; j < k; ++j)
				{
					m[r][j] -= f * m[col][j];
					inv[r][j] -= f * inv[col][j];
				}
			}
		}
		return inv;
	}

	int n_;
	int count_;
	std::vector<std::vector<Rational>> upper_;
	std::vector<std::vector<Rational>> lower_;
};

/// a <-> canonical pair (la < rho): Gamma_a^{mu nu} = d_{la mu} d_{rho nu} - d_{la nu} d_{rho mu}.
inline GammaCoeffs gamma_canonical(int n)
{
	std::size_t const count = pair_count(n);
	std::vector<std::vector<Rational>> t(count, std::vector<Rational>(count, 0));
	for (std::size_t a = 0; a < count; ++a)
		t[a][a] = 1;
	return GammaCoeffs(n, std::move(t));
}

/// so(3) with Gamma_a^{mu nu} = epsilon_{a mu nu}.
inline GammaCoeffs gamma_epsilon()
{
	// canonical pairs of n = 3: (1,2), (1,3), (2,3)
	std::vector<std::vector<Rational>> t = {
	    {0, 0, 1},  // a = 1: eps_{1 2 3} on (2,3)
	    {0, -1, 0}, // a = 2: eps_{2 1 3} = -1 on (1,3)
	    {1, 0, 0},  // a = 3: eps_{3 1 2} on (1,2)
	};
	return GammaCoeffs(3, std::move(t));
}

/// C_abc = 1/4 sum Gamma_a^{mu nu} Gamma_b^{la rho} Gamma^c_{al be} C_{(mu nu)(la rho)(al be)}.
inline StructureConstants gamma_structure_constants_full(GammaCoeffs const &g)
{
	int const n = g.n(), count = g.count();
	StructureConstants c(count);
	for (int a = 1; a <= count; ++a)
		for (int b = 1; b <= count; ++b)
			for (int cc = 1; cc <= count; ++cc)
			{
				Rational s = 0;
				for (int mu = 1; mu <= n; ++mu)
					for (int nu = 1; nu <= n; ++nu)
					{
						Rational const ga = g.upper(a, mu, nu);
						if (ga == 0)
							continue;
						for (int la = 1; la <= n; ++la)
							for (int rho = 1; rho <= n; ++rho)
							{
								Rational const gb = g.upper(b, la, rho);
								if (gb == 0)
									continue;
								for (int al = 1; al <= n; ++al)
									for (int be = 1; be <= n; ++be)
									{
										Rational const k =
										    so_structure_constant(mu, nu, la, rho, al, be);
										if (k == 0)
											continue;
										s += ga * gb * g.lower(cc, al, be) * k;
									}
							}
					}
				c(a, b, cc) = GaussianRational(s / 4);
			}
	return c;
}

/// C_abc = 1/2 sum (Gamma_a^{al la} Gamma_b^{la be} - Gamma_b^{al la} Gamma_a^{la be}) Gamma^c_{al be}.
inline StructureConstants gamma_structure_constants(GammaCoeffs const &g)
{
	int const n = g.n(), count = g.count();
	StructureConstants c(count);
	for (int a = 1; a <= count; ++a)
		for (int b = 1; b <= count; ++b)
			for (int cc = 1; cc <= count; ++cc)
			{
				Rational s = 0;
				for (int al = 1; al <= n; ++al)
					for (int be = 1; be <= n; ++be)
					{
						Rational const gc = g.lower(cc, al, be);
						if (gc == 0)
							continue;
						for (int la = 1; la <= n; ++la)
							s += (g.upper(a, al, la) * g.upper(b, la, be) -
							      g.upper(b, al, la) * g.upper(a, la, be)) *
							     gc;
					}
				c(a, b, cc) = GaussianRational(s / 2);
			}
	return c;
}

/// M_a -> sum_b x_b psi(C)_{ab} in A_N, labels Ma[a].
inline Realization gamma_weyl_realization(GammaCoeffs const &g, int degree)
{
	Realization s = realize_weyl_series(gamma_structure_constants(g), degree);
	Realization r("gamma-weyl", s.algebra(), degree);
	for (auto const &[l, v] : s.values())
		r.set(GeneratorLabel::ma(l.i), v);
	return r;
}

/// Algebra homomorphism A_N -> H_n:
/// x_a -> 1/2 sum Gamma_a^{mu nu} x_{mu nu}, d_a -> 1/2 sum Gamma_a^{mu nu} d_{mu nu}.
class GammaMap
{
  public:
	explicit GammaMap(GammaCoeffs const &g)
	    : source_(Algebra::weyl(g.count())), target_(Algebra::heisenberg(g.n()))
	{
		for (int a = 1; a <= g.count(); ++a)
		{
			NCPoly x(target_);
			for (std::size_t p = 0; p < pair_count(g.n()); ++p)
			{
				auto [mu, nu] = pair_at(g.n(), p);
				Rational const c = g.upper(a, mu, nu);
				if (c != 0)
					x += GaussianRational(c) * NCPoly::x(target_, mu, nu);
			}
			images_.push_back(std::move(x));
		}
		for (int a = 1; a <= g.count(); ++a)
		{
			NCPoly d(target_);
			for (std::size_t p = 0; p < pair_count(g.n()); ++p)
			{
				auto [mu, nu] = pair_at(g.n(), p);
				Rational const c = g.upper(a, mu, nu);
				if (c != 0)
					d += GaussianRational(c) * NCPoly::d(target_, mu, nu);
			}
			images_.push_back(std::move(d));
		}
	}

	Algebra const &target() const { return target_; }

	NCPoly image_x(int a) const { return images_.at(static_cast<std::size_t>(a - 1)); }
	NCPoly image_d(int a) const
	{
		return images_.at(source_.conjugates() + static_cast<std::size_t>(a - 1));
	}

	NCPoly operator()(NCPoly const &p) const
	{
		if (!(p.algebra() == source_))
			throw std::invalid_argument("GammaMap: element not in A_N");
		NCPoly r(target_);
		for (auto const &[m, c] : p.terms())
		{
			NCPoly t = NCPoly::constant(target_, c);
			for (std::size_t k = 0; k < m.size(); ++k)
				for (unsigned e = 0; e < m[k]; ++e)
					t = t * images_[k];
			r += t;
		}
		return r;
	}

  private:
	Algebra source_;
	Algebra target_;
	std::vector<NCPoly> images_; // x_1..x_N then d_1..d_N
};

/// Realization of so(n) in H_n obtained through the A_N Weyl series:
/// M_{mu nu} = sum_a Gamma^a_{mu nu} phi(M_a).
inline Realization gamma_transport(GammaCoeffs const &g, int degree)
{
	Realization weyl = gamma_weyl_realization(g, degree);
	GammaMap phi(g);
	Realization r("so", phi.target(), degree);
	std::vector<NCPoly> images;
	for (int a = 1; a <= g.count(); ++a)
		images.push_back(phi(weyl.at(GeneratorLabel::ma(a))));
	for (std::size_t p = 0; p < pair_count(g.n()); ++p)
	{
		auto [mu, nu] = pair_at(g.n(), p);
		NCPoly acc(phi.target());
		for (int a = 1; a <= g.count(); ++a)
		{
			Rational const c = g.lower(a, mu, nu);
			if (c != 0)
				acc += GaussianRational(c) * images[static_cast<std::size_t>(a - 1)];
		}
		r.set(GeneratorLabel::m(mu, nu), truncate(acc, degree));
	}
	return r;
}

} // namespace genheis

#endif
