#include <gtest/gtest.h>

#include <random>

#include "genheis/exactnum.hpp"

using namespace genheis;

TEST(Rational, MakeRationalCanonicalizes)
{
	Rational r = make_rational(6, -4);
	EXPECT_EQ(r.get_num(), -3);
	EXPECT_EQ(r.get_den(), 2);
	EXPECT_TRUE(is_canonical(r));
	EXPECT_THROW(make_rational(1, 0), std::domain_error);
}

TEST(Rational, ParseAndPrint)
{
	EXPECT_EQ(to_string(parse_rational("-2/4")), "-1/2");
	EXPECT_EQ(to_string(parse_rational("+3")), "3");
	EXPECT_EQ(to_string(parse_rational("0/7")), "0");
	EXPECT_THROW(parse_rational(""), std::invalid_argument);
	EXPECT_THROW(parse_rational("1/x"), std::invalid_argument);
	EXPECT_THROW(parse_rational("1/0"), std::domain_error);
}

TEST(Rational, ArithmeticStaysCanonical)
{
	std::mt19937_64 rng(7);
	std::uniform_int_distribution<long> num(-50, 50), den(1, 50);
	for (int t = 0; t < 500; ++t)
	{
		Rational a = make_rational(num(rng), den(rng));
		Rational b = make_rational(num(rng), den(rng));
		EXPECT_TRUE(is_canonical(Rational(a + b)));
		EXPECT_TRUE(is_canonical(Rational(a * b)));
		EXPECT_TRUE(is_canonical(Rational(a - b)));
		if (b != 0)
		{
			EXPECT_TRUE(is_canonical(Rational(a / b)));
		}
	}
}

TEST(Gaussian, FieldOperations)
{
	GaussianRational i = GaussianRational::i();
	EXPECT_EQ(i * i, GaussianRational(-1));
	GaussianRational z(make_rational(1, 2), make_rational(-3, 4));
	EXPECT_EQ(z * z.inverse(), GaussianRational(1));
	EXPECT_EQ(z / z, GaussianRational(1));
	EXPECT_EQ(z.conj().im(), make_rational(3, 4));
	EXPECT_THROW(GaussianRational().inverse(), std::domain_error);
	EXPECT_EQ(z * make_rational(2, 1), GaussianRational(1, make_rational(-3, 2)));
}

TEST(Gaussian, TextRoundTrip)
{
	EXPECT_EQ(to_string(GaussianRational(make_rational(1, 2))), "1/2");
	EXPECT_EQ(to_string(GaussianRational(0, make_rational(-1, 10))), "-1/10*i");
	EXPECT_EQ(to_string(GaussianRational(make_rational(-1, 2), 3)), "-1/2+3*i");
	EXPECT_EQ(parse_gaussian("i"), GaussianRational::i());
	EXPECT_EQ(parse_gaussian("-i"), -GaussianRational::i());
	EXPECT_EQ(parse_gaussian("2-1/3*i"), GaussianRational(2, make_rational(-1, 3)));
	EXPECT_THROW(parse_gaussian("2x"), std::invalid_argument);

	std::mt19937_64 rng(11);
	std::uniform_int_distribution<long> num(-20, 20), den(1, 20);
	for (int t = 0; t < 200; ++t)
	{
		GaussianRational z(make_rational(num(rng), den(rng)),
		                   make_rational(num(rng), den(rng)));
		EXPECT_EQ(parse_gaussian(to_string(z)), z) << to_string(z);
	}
}

TEST(Bernoulli, LowOrderValues)
{
	EXPECT_EQ(bernoulli(0), 1);
	EXPECT_EQ(bernoulli(1), make_rational(-1, 2));
	EXPECT_EQ(bernoulli(2), make_rational(1, 6));
	EXPECT_EQ(bernoulli(3), 0);
	EXPECT_EQ(bernoulli(4), make_rational(-1, 30));
	EXPECT_EQ(bernoulli(12), make_rational(-691, 2730));
	for (unsigned k = 3; k < 30; k += 2)
		EXPECT_EQ(bernoulli(k), 0) << k;
}

TEST(Bernoulli, PsiCoefficients)
{
	EXPECT_EQ(psi_coeff(0), 1);
	EXPECT_EQ(psi_coeff(1), make_rational(1, 2));
	EXPECT_EQ(psi_coeff(2), make_rational(1, 12));
	EXPECT_EQ(psi_coeff(4), make_rational(-1, 720));
	EXPECT_EQ(psi_inv_coeff(0), 1);
	EXPECT_EQ(psi_inv_coeff(1), make_rational(-1, 2));
	EXPECT_EQ(psi_inv_coeff(3), make_rational(-1, 24));
	EXPECT_NO_THROW(self_test());
}

// psi and 1/psi as power series multiply to 1.
TEST(Bernoulli, PsiTimesInverseIsOne)
{
	for (unsigned k = 0; k <= 20; ++k)
	{
		Rational s = 0;
		for (unsigned j = 0; j <= k; ++j)
			s += psi_coeff(j) * psi_inv_coeff(k - j);
		EXPECT_EQ(s, k == 0 ? 1 : 0) << k;
	}
}

// Independent of the recurrence: t/(1-e^{-t}) obtained by inverting
// sum_j (-1)^j t^j/(j+1)! with plain long division.
TEST(Bernoulli, PsiAgainstLongDivision)
{
	unsigned const deg = 16;
	std::vector<Rational> den, q;
	for (unsigned j = 0; j <= deg; ++j)
	{
		Rational c(1);
		c /= Rational(factorial(j + 1));
		den.push_back(j % 2 ? Rational(-c) : c);
	}
	for (unsigned k = 0; k <= deg; ++k)
	{
		Rational s = k == 0 ? 1 : 0;
		for (unsigned j = 0; j < k; ++j)
			s -= q[j] * den[k - j];
		q.push_back(s);
	}
	for (unsigned k = 0; k <= deg; ++k)
		EXPECT_EQ(psi_coeff(k), q[k]) << k;
}
