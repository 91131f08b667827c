#ifndef GENHEIS_EXACTNUM_HPP
#define GENHEIS_EXACTNUM_HPP

#include <cstdint>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace genheis
{

/// Arbitrary-precision rational. GMP keeps every arithmetic result in lowest
/// terms with a positive denominator; values built from a numerator and a
/// denominator must go through make_rational().
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1)
{
	if (den == 0)
		throw std::domain_error("make_rational: zero denominator");
	Rational r(num, den);
	r.canonicalize();
	return r;
}

inline Rational make_rational(Integer num, Integer den)
{
	if (den == 0)
		throw std::domain_error("make_rational: zero denominator");
	Rational r(num, den);
	r.canonicalize();
	return r;
}

inline bool is_canonical(Rational const &r)
{
	if (sgn(r.get_den()) <= 0)
		return false;
	Integer g;
	mpz_gcd(g.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
	return g == 1 || (r.get_num() == 0 && r.get_den() == 1);
}

inline Rational parse_rational(std::string_view text)
{
	std::string s(text);
	if (s.empty())
		throw std::invalid_argument("parse_rational: empty string");
	if (s.front() == '+')
		s.erase(0, 1);
	Rational r;
	if (r.set_str(s, 10) != 0)
		throw std::invalid_argument("parse_rational: malformed '" +
		                            std::string(text) + "'");
	if (r.get_den() == 0)
		throw std::domain_error("parse_rational: zero denominator");
	r.canonicalize();
	return r;
}

inline std::string to_string(Rational const &r) { return r.get_str(); }

inline Integer factorial(unsigned k)
{
	Integer f;
	mpz_fac_ui(f.get_mpz_t(), k);
	return f;
}

inline Integer binomial(unsigned n, unsigned k)
{
	Integer b;
	mpz_bin_uiui(b.get_mpz_t(), n, k);
	return b;
}

/// Element of Q(i). Every coefficient in the engine lives here, including the
/// purely real ones.
class GaussianRational
{
  public:
	GaussianRational() = default;
	GaussianRational(Rational re, Rational im = 0)
	    : re_(std::move(re)), im_(std::move(im))
	{}
	GaussianRational(long v) : re_(v) {}

	static GaussianRational i() { return {0, 1}; }

	Rational const &re() const { return re_; }
	Rational const &im() const { return im_; }

	bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
	bool is_real() const { return sgn(im_) == 0; }

	GaussianRational conj() const { return {re_, -im_}; }

	GaussianRational &operator+=(GaussianRational const &o)
	{
		re_ += o.re_;
		if (sgn(o.im_) != 0)
			im_ += o.im_;
		return *this;
	}
	GaussianRational &operator-=(GaussianRational const &o)
	{
		re_ -= o.re_;
		if (sgn(o.im_) != 0)
			im_ -= o.im_;
		return *this;
	}
	GaussianRational &operator*=(GaussianRational const &o)
	{
		if (is_real() && o.is_real())
		{
			re_ *= o.re_;
			return *this;
		}
		Rational re = re_ * o.re_ - im_ * o.im_;
		Rational im = re_ * o.im_ + im_ * o.re_;
		re_ = std::move(re);
		im_ = std::move(im);
		return *this;
	}
	GaussianRational &operator*=(Rational const &o)
	{
		re_ *= o;
		if (sgn(im_) != 0)
			im_ *= o;
		return *this;
	}

	GaussianRational inverse() const
	{
		if (is_zero())
			throw std::domain_error("GaussianRational: inverse of zero");
		Rational norm = re_ * re_ + im_ * im_;
		return {re_ / norm, -im_ / norm};
	}
	GaussianRational &operator/=(GaussianRational const &o)
	{
		return *this *= o.inverse();
	}

	friend GaussianRational operator-(GaussianRational a)
	{
		a.re_ = -a.re_;
		a.im_ = -a.im_;
		return a;
	}
	friend GaussianRational operator+(GaussianRational a,
	                                  GaussianRational const &b)
	{
		return a += b;
	}
	friend GaussianRational operator-(GaussianRational a,
	                                  GaussianRational const &b)
	{
		return a -= b;
	}
	friend GaussianRational operator*(GaussianRational a,
	                                  GaussianRational const &b)
	{
		return a *= b;
	}
	friend GaussianRational operator/(GaussianRational a,
	                                  GaussianRational const &b)
	{
		return a /= b;
	}
	friend bool operator==(GaussianRational const &a,
	                       GaussianRational const &b)
	{
		return a.re_ == b.re_ && a.im_ == b.im_;
	}

  private:
	Rational re_;
	Rational im_;
};

/// "a/b", "c/d*i" or "a/b+c/d*i"; integers drop the "/1".
inline std::string to_string(GaussianRational const &z)
{
	if (z.is_real())
		return to_string(z.re());
	std::string im = to_string(z.im());
	if (sgn(z.re()) == 0)
		return im + "*i";
	std::string s = to_string(z.re());
	if (sgn(z.im()) > 0)
		s += "+";
	return s + im + "*i";
}

inline std::ostream &operator<<(std::ostream &os, GaussianRational const &z)
{
	return os << to_string(z);
}

/// Inverse of to_string(GaussianRational). Also accepts a bare "i" / "-i".
inline GaussianRational parse_gaussian(std::string_view text)
{
	auto bad = [&] {
		return std::invalid_argument("parse_gaussian: malformed '" +
		                             std::string(text) + "'");
	};
	if (text.empty())
		throw bad();
	auto parse_imag = [&](std::string_view s) -> Rational {
		// s ends in "i"
		s.remove_suffix(1);
		if (s.empty() || s == "+")
			return 1;
		if (s == "-")
			return -1;
		if (s.back() != '*')
			throw bad();
		s.remove_suffix(1);
		return parse_rational(s);
	};
	if (text.back() != 'i')
		return parse_rational(text);
	// split at the sign that starts the imaginary part (not at position 0)
	std::size_t split = std::string_view::npos;
	for (std::size_t k = text.size(); k-- > 1;)
		if (text[k] == '+' || text[k] == '-')
		{
			split = k;
			break;
		}
	if (split == std::string_view::npos)
		return {0, parse_imag(text)};
	return {parse_rational(text.substr(0, split)),
	        parse_imag(text.substr(split))};
}

namespace detail
{

struct BernoulliCache
{
	std::mutex mutex;
	std::vector<Rational> values{Rational(1)};
};

inline BernoulliCache &bernoulli_cache()
{
	static BernoulliCache cache;
	return cache;
}

} // namespace detail

/// B_k with B_1 = -1/2, from sum_{j=0}^{m} binom(m+1,j) B_j = 0.
inline Rational bernoulli(unsigned k)
{
	auto &cache = detail::bernoulli_cache();
	std::lock_guard lock(cache.mutex);
	auto &b = cache.values;
	for (unsigned m = static_cast<unsigned>(b.size()); m <= k; ++m)
	{
		Rational s = 0;
		for (unsigned j = 0; j < m; ++j)
			s += Rational(binomial(m + 1, j)) * b[j];
		b.push_back(-s / Rational(m + 1));
	}
	return b[k];
}

/// Taylor coefficient of t^k in t / (1 - e^{-t}).
inline Rational psi_coeff(unsigned k)
{
	Rational c = bernoulli(k) / Rational(factorial(k));
	return k % 2 == 0 ? c : Rational(-c);
}

/// Taylor coefficient of t^k in (1 - e^{-t}) / t.
inline Rational psi_inv_coeff(unsigned k)
{
	Rational c(1, 1);
	c /= Rational(factorial(k + 1));
	return k % 2 == 0 ? c : Rational(-c);
}

/// Throws if the sign convention of the psi series is off.
inline void self_test()
{
	if (psi_coeff(0) != 1 || psi_coeff(1) != make_rational(1, 2) ||
	    bernoulli(1) != make_rational(-1, 2))
		throw std::logic_error("genheis: Bernoulli sign convention broken");
}

} // namespace genheis

#endif
