#ifndef GENHEIS_TESTS_FIXTURES_HPP
#define GENHEIS_TESTS_FIXTURES_HPP

#include <map>
#include <random>
#include <vector>

#include "genheis/ncalgebra.hpp"

namespace genheis::fixtures
{

/// Word of variable indices, read left to right.
using Word = std::vector<std::size_t>;

/// Normal form by literal rewriting: the leftmost adjacent "derivative then
/// coordinate" pair d_k x_j is replaced by x_j d_k + [d_k, x_j], one swap at a
/// time, until no such pair remains. Shares nothing with mul() apart from the
/// variable layout and the commutator signs.
inline NCPoly rewrite_normal_order(Algebra const &alg, Word const &start,
                                   GaussianRational const &coef = 1)
{
	std::size_t const v = alg.conjugates();
	std::vector<std::pair<Word, GaussianRational>> stack{{start, coef}};
	std::vector<NCPoly::Term> done;
	while (!stack.empty())
	{
		auto [w, c] = std::move(stack.back());
		stack.pop_back();
		std::size_t pos = w.size();
		for (std::size_t k = 0; k + 1 < w.size(); ++k)
			if (w[k] >= v && w[k + 1] < v)
			{
				pos = k;
				break;
			}
		if (pos == w.size())
		{
			Monomial m(alg.variables());
			for (std::size_t g : w)
				++m[g];
			done.emplace_back(std::move(m), c);
			continue;
		}
		std::size_t const dk = w[pos] - v;
		std::size_t const xj = w[pos + 1];
		if (dk == xj)
		{
			Word contracted;
			contracted.insert(contracted.end(), w.begin(), w.begin() + static_cast<long>(pos));
			contracted.insert(contracted.end(), w.begin() + static_cast<long>(pos) + 2, w.end());
			stack.emplace_back(std::move(contracted),
			                   c * GaussianRational(alg.commutator_sign(dk)));
		}
		std::swap(w[pos], w[pos + 1]);
		stack.emplace_back(std::move(w), c);
	}
	return NCPoly::from_terms(alg, std::move(done));
}

inline Word word_of(Monomial const &m)
{
	Word w;
	for (std::size_t k = 0; k < m.size(); ++k)
		for (unsigned e = 0; e < m[k]; ++e)
			w.push_back(k);
	return w;
}

/// Product of two normal-ordered polynomials via the rewriting oracle.
inline NCPoly rewrite_product(NCPoly const &a, NCPoly const &b)
{
	NCPoly r(a.algebra());
	for (auto const &[ma, ca] : a.terms())
		for (auto const &[mb, cb] : b.terms())
		{
			Word w = word_of(ma);
			Word wb = word_of(mb);
			w.insert(w.end(), wb.begin(), wb.end());
			r += rewrite_normal_order(a.algebra(), w, ca * cb);
		}
	return r;
}

inline Rational random_rational(std::mt19937_64 &rng, long range = 6)
{
	std::uniform_int_distribution<long> num(-range, range), den(1, range);
	return make_rational(num(rng), den(rng));
}

inline GaussianRational random_coef(std::mt19937_64 &rng, bool complex = false)
{
	Rational re = random_rational(rng);
	if (re == 0)
		re = 1;
	return complex ? GaussianRational(re, random_rational(rng)) : GaussianRational(re);
}

inline Monomial random_monomial(Algebra const &alg, std::mt19937_64 &rng,
                                unsigned max_total)
{
	Monomial m(alg.variables());
	std::uniform_int_distribution<std::size_t> var(0, alg.variables() - 1);
	std::uniform_int_distribution<unsigned> len(0, max_total);
	for (unsigned k = len(rng); k > 0; --k)
		++m[var(rng)];
	return m;
}

inline NCPoly random_poly(Algebra const &alg, std::mt19937_64 &rng,
                          unsigned terms, unsigned max_total, bool complex = false)
{
	std::vector<NCPoly::Term> t;
	for (unsigned k = 0; k < terms; ++k)
		t.emplace_back(random_monomial(alg, rng, max_total), random_coef(rng, complex));
	return NCPoly::from_terms(alg, std::move(t));
}

inline NCPoly random_coordinate_poly(Algebra const &alg, std::mt19937_64 &rng,
                                     unsigned terms, unsigned max_total)
{
	std::vector<NCPoly::Term> t;
	std::uniform_int_distribution<std::size_t> var(0, alg.conjugates() - 1);
	std::uniform_int_distribution<unsigned> len(0, max_total);
	for (unsigned k = 0; k < terms; ++k)
	{
		Monomial m(alg.variables());
		for (unsigned j = len(rng); j > 0; --j)
			++m[var(rng)];
		t.emplace_back(std::move(m), random_coef(rng));
	}
	return NCPoly::from_terms(alg, std::move(t));
}

inline std::vector<Algebra> sample_algebras()
{
	return {Algebra::heisenberg(3), Algebra::heisenberg(4, MetricKind::Minkowski),
	        Algebra::extended(3, MetricKind::Minkowski),
	        Algebra::extended(3, MetricKind::Euclidean), Algebra::weyl(3)};
}

} // namespace genheis::fixtures

#endif
