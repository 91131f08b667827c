#ifndef GENHEIS_IO_HPP
#define GENHEIS_IO_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "genheis/opmatrix.hpp"
#include "genheis/realize.hpp"
#include "genheis/verify.hpp"

namespace genheis
{

using json = nlohmann::ordered_json;

inline json poly_to_json(NCPoly const &p)
{
	json terms = json::array();
	for (auto const &[m, c] : p.terms())
		terms.push_back({{"coef", to_string(c)}, {"mono", to_string(p.algebra(), m)}});
	return terms;
}

inline NCPoly poly_from_json(Algebra const &alg, json const &j)
{
	if (!j.is_array())
		throw std::invalid_argument("poly: expected a term list");
	std::vector<NCPoly::Term> terms;
	for (auto const &t : j)
	{
		NCPoly m = parse_monomial(alg, t.at("mono").get<std::string>());
		GaussianRational c = parse_gaussian(t.at("coef").get<std::string>());
		for (auto const &[mono, one] : m.terms())
			terms.emplace_back(mono, c * one);
	}
	return NCPoly::from_terms(alg, std::move(terms));
}

inline json realization_to_json(Realization const &r)
{
	Algebra const &alg = r.algebra();
	json gens = json::array();
	for (auto const &[l, v] : r.values())
		gens.push_back({{"label", to_string(l)}, {"poly", poly_to_json(v)}});
	return {{"algebra", r.name()},
	        {"mode", to_string(alg.mode())},
	        {"metric", to_string(alg.metric().kind())},
	        {"n", alg.dim()},
	        {"degree", r.degree()},
	        {"generators", std::move(gens)}};
}

inline Realization realization_from_json(json const &j)
{
	Algebra alg(parse_mode(j.at("mode").get<std::string>()),
	            Metric(j.at("n").get<int>(),
	                   parse_metric_kind(j.at("metric").get<std::string>())));
	Realization r(j.at("algebra").get<std::string>(), alg, j.at("degree").get<int>());
	for (auto const &g : j.at("generators"))
		r.set(parse_label(g.at("label").get<std::string>()),
		      poly_from_json(alg, g.at("poly")));
	return r;
}

inline std::string index_to_string(Space s, std::size_t k)
{
	if (s.kind == SpaceKind::Vec)
		return std::to_string(k + 1);
	PairIndex p = pair_at(s.n, k);
	return "(" + std::to_string(p.lo) + "," + std::to_string(p.hi) + ")";
}

inline json matrix_to_json(OpMatrix const &m)
{
	json entries = json::array();
	for (std::size_t r = 0; r < m.rows().size(); ++r)
		for (std::size_t c = 0; c < m.cols().size(); ++c)
			if (!m.at(r, c).is_zero())
				entries.push_back({{"row", index_to_string(m.rows(), r)},
				                   {"col", index_to_string(m.cols(), c)},
				                   {"poly", poly_to_json(m.at(r, c))}});
	return {{"rowSpace", to_string(m.rows())},
	        {"colSpace", to_string(m.cols())},
	        {"metric", to_string(m.metric().kind())},
	        {"entries", std::move(entries)}};
}

/// {"dim": m, "entries": [{"mu": 1, "nu": 2, "a": 3, "value": "1"}, ...]};
/// unlisted constants are zero.
inline StructureConstants structure_constants_from_json(json const &j)
{
	StructureConstants c(j.at("dim").get<int>());
	for (auto const &e : j.at("entries"))
		c(e.at("mu").get<int>(), e.at("nu").get<int>(), e.at("a").get<int>()) =
		    parse_gaussian(e.at("value").get<std::string>());
	return c;
}

inline json structure_constants_to_json(StructureConstants const &c)
{
	json entries = json::array();
	for (int mu = 1; mu <= c.dim(); ++mu)
		for (int nu = 1; nu <= c.dim(); ++nu)
			for (int a = 1; a <= c.dim(); ++a)
				if (!c(mu, nu, a).is_zero())
					entries.push_back({{"mu", mu}, {"nu", nu}, {"a", a},
					                   {"value", to_string(c(mu, nu, a))}});
	return {{"dim", c.dim()}, {"entries", std::move(entries)}};
}

/// elapsedMs is left out when timing is false so that reports can be compared
/// byte for byte.
inline json report_to_json(BracketReport const &rep, bool timing = true)
{
	json pairs = json::array();
	for (auto const &p : rep.pairs)
		pairs.push_back({{"g1", to_string(p.g1)},
		                 {"g2", to_string(p.g2)},
		                 {"residualTerms", p.residual.size()},
		                 {"cmpDegree", p.cmp_degree}});
	json j = {{"suite", rep.suite},
	          {"n", rep.n},
	          {"metric", to_string(rep.metric)},
	          {"degree", rep.degree},
	          {"cmpDegree", rep.cmp_degree},
	          {"pairs", std::move(pairs)},
	          {"pass", rep.pass}};
	if (timing)
		j["elapsedMs"] = rep.elapsed_ms;
	return j;
}

} // namespace genheis

#endif
