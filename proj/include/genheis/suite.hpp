#ifndef GENHEIS_SUITE_HPP
#define GENHEIS_SUITE_HPP

#include <optional>
#include <string>
#include <vector>

#include "genheis/realize.hpp"

namespace genheis
{

/// A realization together with the presentation it is supposed to realize.
struct Suite
{
	std::string name;
	Realization realization;
	LiePresentation presentation;
};

struct SuiteRequest
{
	std::string algebra = "so";
	int n = 3;
	std::optional<MetricKind> metric;
	int degree = 4;
	std::vector<Rational> kappa;
	std::optional<StructureConstants> constants;
};

inline std::vector<std::string> const &suite_names()
{
	static std::vector<std::string> const names{
	    "so",        "lorentz",           "extended-so", "extended-lorentz",
	    "poincare",  "extended-poincare", "kappa",       "weyl-generic"};
	return names;
}

/// Metric an algebra name fixes, if any. extended-so / extended-lorentz fix
/// their metric through the name; the so family is Euclidean and the Lorentz
/// and Poincare families Minkowski.
inline MetricKind natural_metric(std::string const &algebra)
{
	if (algebra == "lorentz" || algebra == "extended-lorentz" ||
	    algebra == "poincare" || algebra == "extended-poincare")
		return MetricKind::Minkowski;
	return MetricKind::Euclidean;
}

/// Throws std::invalid_argument for unknown names or a metric the algebra does
/// not admit.
inline Suite make_suite(SuiteRequest const &q)
{
	MetricKind const natural = natural_metric(q.algebra);
	if (q.metric && *q.metric != natural)
		throw std::invalid_argument("algebra " + q.algebra + " requires metric " +
		                            to_string(natural));
	int const n = q.n;
	int const d = q.degree;
	if (q.algebra == "so")
		return {"so", realize_so(n, d), LiePresentation::so(n)};
	if (q.algebra == "lorentz")
		return {"lorentz", realize_lorentz(n, d), LiePresentation::lorentz(n)};
	if (q.algebra == "extended-so")
		return {"extended-so", realize_extended(n, MetricKind::Euclidean, d),
		        LiePresentation::extended_so(n)};
	if (q.algebra == "extended-lorentz")
		return {"extended-lorentz", realize_extended(n, MetricKind::Minkowski, d),
		        LiePresentation::extended_lorentz(n)};
	if (q.algebra == "poincare")
		return {"poincare", realize_poincare(n, d), LiePresentation::poincare(n)};
	if (q.algebra == "extended-poincare")
		return {"extended-poincare", realize_extended_poincare(n, d),
		        LiePresentation::extended_poincare(n)};
	if (q.algebra == "kappa")
	{
		std::vector<Rational> a = q.kappa;
		if (a.empty())
		{
			a.assign(static_cast<std::size_t>(n), Rational(0));
			a.back() = 1;
		}
		return {"kappa", realize_kappa_closed(a, d), LiePresentation::kappa(a)};
	}
	if (q.algebra == "weyl-generic")
	{
		StructureConstants c = q.constants
		                           ? *q.constants
		                           : gamma_structure_constants(gamma_canonical(n));
		return {"weyl-generic", realize_weyl_series(c, d),
		        LiePresentation::custom(c)};
	}
	throw std::invalid_argument("unknown algebra '" + q.algebra + "'");
}

} // namespace genheis

#endif
