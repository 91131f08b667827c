#ifndef GENHEIS_VERIFY_HPP
#define GENHEIS_VERIFY_HPP

#include <chrono>
#include <exception>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "genheis/exactnum.hpp"
#include "genheis/ncalgebra.hpp"
#include "genheis/opmatrix.hpp"
#include "genheis/realize.hpp"

namespace genheis
{

struct PairCheck
{
	GeneratorLabel g1;
	GeneratorLabel g2;
	NCPoly residual;
	int cmp_degree;
};

struct BracketReport
{
	std::string suite;
	int n = 0;
	MetricKind metric = MetricKind::Euclidean;
	int degree = 0;
	int cmp_degree = 0;
	std::vector<PairCheck> pairs;
	bool pass = false;
	std::size_t max_residual_terms = 0;
	double elapsed_ms = 0;

	std::size_t failures() const
	{
		std::size_t f = 0;
		for (auto const &p : pairs)
			f += p.residual.is_zero() ? 0 : 1;
		return f;
	}
};

/// Residual of one bracket: [r(g1), r(g2)] - r([g1, g2]) up to d-degree
/// cmp. Products of two degree-D series are only complete below D when a
/// coordinate is contracted, so pairs with a coordinate are compared at D-1;
/// pairs of pure derivative series commute exactly and are compared at D.
inline PairCheck check_pair(Realization const &r, LiePresentation const &p,
                            GeneratorLabel const &g1, GeneratorLabel const &g2,
                            int degree)
{
	NCPoly const &a = r.at(g1);
	NCPoly const &b = r.at(g2);
	bool const exact = a.max_x_degree() <= 0 && b.max_x_degree() <= 0;
	int const cmp = exact ? degree : degree - 1;
	NCPoly lhs = truncate(commutator(a, b, cmp), cmp);
	NCPoly rhs = truncate(r.evaluate(p.bracket(g1, g2)), cmp);
	return {g1, g2, lhs - rhs, cmp};
}

/// Checks every unordered pair of presentation generators. jobs > 1 spreads
/// the pairs over threads; the result does not depend on jobs.
inline BracketReport check_bracket(Realization const &r,
                                   LiePresentation const &p, int degree,
                                   std::string suite = {}, unsigned jobs = 1)
{
	if (degree < 1)
		throw std::domain_error("check_bracket: degree must be at least 1");
	if (r.degree() < degree)
		throw std::invalid_argument("check_bracket: realization truncated below "
		                            "the requested degree");
	auto const start = std::chrono::steady_clock::now();
	auto const &labels = p.generators();
	for (auto const &l : labels)
		if (!r.contains(l))
			throw std::out_of_range("realization missing label " + to_string(l));

	std::vector<std::pair<std::size_t, std::size_t>> work;
	for (std::size_t i = 0; i < labels.size(); ++i)
		for (std::size_t j = i + 1; j < labels.size(); ++j)
			work.emplace_back(i, j);

	std::vector<std::optional<PairCheck>> results(work.size());
	auto run = [&](std::size_t first, std::size_t stride) {
		for (std::size_t k = first; k < work.size(); k += stride)
			results[k] = check_pair(r, p, labels[work[k].first],
			                        labels[work[k].second], degree);
	};
	jobs = std::max(1u, jobs);
	if (jobs == 1)
		run(0, 1);
	else
	{
		std::vector<std::exception_ptr> errors(jobs);
		std::vector<std::thread> pool;
		for (unsigned t = 0; t < jobs; ++t)
			pool.emplace_back([&, t] {
				try
				{
					run(t, jobs);
				}
				catch (...)
				{
					errors[t] = std::current_exception();
				}
			});
		for (auto &th : pool)
			th.join();
		for (auto const &e : errors)
			if (e)
				std::rethrow_exception(e);
	}

	BracketReport rep;
	rep.suite = suite.empty() ? r.name() : std::move(suite);
	rep.n = r.algebra().dim();
	rep.metric = r.algebra().metric().kind();
	rep.degree = degree;
	rep.cmp_degree = degree - 1;
	rep.pass = true;
	for (auto &res : results)
	{
		rep.max_residual_terms = std::max(rep.max_residual_terms, res->residual.size());
		rep.pass = rep.pass && res->residual.is_zero();
		rep.pairs.push_back(std::move(*res));
	}
	rep.elapsed_ms = std::chrono::duration<double, std::milli>(
	                     std::chrono::steady_clock::now() - start)
	                     .count();
	return rep;
}

/// [[a,b],c] + [[b,c],a] + [[c,a],b] = 0 for all generator triples.
inline bool jacobi_check(LiePresentation const &p)
{
	auto const &labels = p.generators();
	auto nested = [&](GeneratorLabel const &a, GeneratorLabel const &b,
	                  GeneratorLabel const &c, LinearCombination &acc) {
		for (auto const &[coef, l] : p.bracket(a, b))
			for (auto const &[coef2, l2] : p.bracket(l, c))
				acc.emplace_back(coef * coef2, l2);
	};
	for (auto const &a : labels)
		for (auto const &b : labels)
			for (auto const &c : labels)
			{
				LinearCombination acc;
				nested(a, b, c, acc);
				nested(b, c, a, acc);
				nested(c, a, b, acc);
				if (!detail::canonical(std::move(acc)).empty())
					return false;
			}
	return true;
}

struct OracleResult
{
	bool pass = true;
	std::size_t checks = 0;
	std::string first_failure;

	void record(bool ok, std::string const &what)
	{
		++checks;
		if (!ok && pass)
		{
			pass = false;
			first_failure = what;
		}
	}
};

/// Recursive powers K^m (both recursion orders) against the binomial closed
/// form, m = 0..m_max.
inline OracleResult prop_a1_check(int n, int m_max,
                                  MetricKind kind = MetricKind::Euclidean)
{
	Algebra alg = Algebra::heisenberg(n, kind);
	OpMatrix const k = k_matrix(alg);
	OpMatrix left = identity_matrix(alg, Space::pair(n));
	OpMatrix right = left;
	OracleResult res;
	for (int m = 0; m <= m_max; ++m)
	{
		if (m > 0)
		{
			left = mat_mul(k, left);
			right = mat_mul(right, k);
		}
		res.record(left == right, "K K^{m-1} != K^{m-1} K at m=" + std::to_string(m));
		res.record(left == closed_form_k_power(alg, m),
		           "closed form differs at m=" + std::to_string(m));
	}
	return res;
}

/// [x_{ab}, (d^m)_{rs}] computed by normal ordering against the two
/// closed expressions
///   2 sum_{k=1}^m binom(m,k) sum_mu (-K)^{k-1}_{(ab)(mu r)} (d^{m-k})_{mu s}
///   sum_{p=1}^m (-1)^{p-1} [(d^{m-p})_{a s} (d^{p-1})_{b r} - (d^{p-1})_{a r} (d^{m-p})_{b s}]
/// for every index tuple.
inline OracleResult prop_a3_check(int n, int m_max)
{
	Algebra alg = Algebra::heisenberg(n);
	auto dp = matrix_powers(partial_matrix(alg), m_max);
	OpMatrix neg_k = scale(k_matrix(alg), -1);
	auto kp = matrix_powers(neg_k, m_max);
	OracleResult res;
	for (int m = 1; m <= m_max; ++m)
		for (int a = 1; a <= n; ++a)
			for (int b = 1; b <= n; ++b)
				for (int rr = 1; rr <= n; ++rr)
					for (int s = 1; s <= n; ++s)
					{
						auto const um = static_cast<std::size_t>(m);
						NCPoly lhs = commutator(NCPoly::x(alg, a, b), dp[um].entry({rr}, {s}));
						NCPoly viak(alg);
						for (int k = 1; k <= m; ++k)
						{
							NCPoly inner(alg);
							for (int mu = 1; mu <= n; ++mu)
								inner += mul(kp[static_cast<std::size_t>(k - 1)].entry({a, b}, {mu, rr}),
								             dp[static_cast<std::size_t>(m - k)].entry({mu}, {s}));
							inner *= GaussianRational(
							    Rational(2 * binomial(um, static_cast<unsigned>(k))));
							viak += inner;
						}
						NCPoly alternating(alg);
						for (int q = 1; q <= m; ++q)
						{
							auto const hi = static_cast<std::size_t>(m - q);
							auto const lo = static_cast<std::size_t>(q - 1);
							NCPoly t = mul(dp[hi].entry({a}, {s}), dp[lo].entry({b}, {rr})) -
							           mul(dp[lo].entry({a}, {rr}), dp[hi].entry({b}, {s}));
							alternating += q % 2 == 1 ? t : -t;
						}
						std::string const where =
						    "m=" + std::to_string(m) + " (a,b,r,s)=(" + std::to_string(a) +
						    "," + std::to_string(b) + "," + std::to_string(rr) + "," +
						    std::to_string(s) + ")";
						res.record(lhs == viak, "K-power form differs at " + where);
						res.record(lhs == alternating, "alternating form differs at " + where);
					}
	return res;
}

/// (sum_a k_a M_a)^m |> 1 = (sum_a k_a x_a)^m in the A_N picture.
inline OracleResult weyl_property_check(GammaCoeffs const &g,
                                        std::vector<Rational> const &k,
                                        int m_max)
{
	if (k.size() != static_cast<std::size_t>(g.count()))
		throw std::invalid_argument("weyl_property_check: k has wrong length");
	Realization r = gamma_weyl_realization(g, std::max(m_max, 1));
	Algebra const &alg = r.algebra();
	NCPoly op(alg), lin(alg);
	for (int a = 1; a <= g.count(); ++a)
	{
		GaussianRational c(k[static_cast<std::size_t>(a - 1)]);
		op += c * r.at(GeneratorLabel::ma(a));
		lin += c * NCPoly::xa(alg, a);
	}
	OracleResult res;
	PolyState state = PolyState::one(alg);
	NCPoly expected = NCPoly::constant(alg, 1);
	for (int m = 1; m <= m_max; ++m)
	{
		state = act(op, state);
		expected = expected * lin;
		res.record(state.poly() == expected,
		           "Weyl property fails at m=" + std::to_string(m));
	}
	return res;
}

/// Lambda^T g Lambda = g and Lambda g Lambda^T = g up to d-degree D, with
/// Lambda = e^d.
inline OracleResult lambda_group_check(int n, MetricKind kind, int degree)
{
	Algebra alg = Algebra::heisenberg(n, kind);
	OpMatrix lam = exp_partial(alg, degree);
	OpMatrix unit = identity_matrix(alg, Space::vec(n));
	OracleResult res;
	res.record(truncate(mat_mul(transpose(lam), lam, degree), degree) == unit,
	           "Lambda^T g Lambda != g");
	res.record(truncate(mat_mul(lam, transpose(lam), degree), degree) == unit,
	           "Lambda g Lambda^T != g");
	return res;
}

/// Copy of r with one retained coefficient perturbed by a nonzero rational.
inline Realization mutate(Realization r, std::mt19937_64 &rng,
                          std::string *what = nullptr)
{
	std::vector<GeneratorLabel> candidates;
	for (auto const &[l, v] : r.values())
		if (!v.is_zero())
			candidates.push_back(l);
	if (candidates.empty())
		throw std::invalid_argument("mutate: realization has no terms");
	GeneratorLabel const l = candidates[std::uniform_int_distribution<std::size_t>(
	    0, candidates.size() - 1)(rng)];
	NCPoly &v = r.values().at(l);
	auto &terms = v.raw_terms();
	auto &term = terms[std::uniform_int_distribution<std::size_t>(
	    0, terms.size() - 1)(rng)];
	long num = std::uniform_int_distribution<long>(1, 5)(rng);
	long den = std::uniform_int_distribution<long>(1, 7)(rng);
	if (rng() & 1)
		num = -num;
	GaussianRational const delta(make_rational(num, den));
	term.second += delta;
	if (what)
		*what = to_string(l) + " term " + to_string(v.algebra(), term.first) +
		        " += " + to_string(delta);
	if (term.second.is_zero())
	{
		// keep the no-zero-coefficient invariant: drop the cancelled term
		std::vector<NCPoly::Term> kept(terms.begin(), terms.end());
		v = NCPoly::from_terms(v.algebra(), std::move(kept));
	}
	return r;
}

} // namespace genheis

#endif
