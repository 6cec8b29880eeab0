#include <gtest/gtest.h>

#include <vector>

#include "parkfn/numeric.hpp"
#include "parkfn/polynomial.hpp"

using namespace parkfn;

TEST(Numeric, BinomialAndMultinomial) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(5, 6), 0);
  EXPECT_EQ(binomial(5, -1), 0);
  EXPECT_EQ(binomial(60, 30), BigInt("118264581564861424"));
  EXPECT_EQ(factorial(20), BigInt("2432902008176640000"));
  EXPECT_EQ(multinomial(std::vector<std::int64_t>{2, 1, 1}), 12);
  EXPECT_EQ(multinomial(std::vector<std::int64_t>{}), 1);
  EXPECT_EQ(multinomial(std::vector<std::int64_t>{0, 0, 0}), 1);
}

TEST(Numeric, Powers) {
  EXPECT_EQ(ipow(BigInt(3), 40), BigInt("12157665459056928801"));
  EXPECT_EQ(rpow(2, -3), Rational(1, 8));
  EXPECT_EQ(rpow(Rational(-2, 3), 3), Rational(-8, 27));
  EXPECT_EQ(rpow(0, 0), 1);
  EXPECT_THROW(rpow(0, -1), DomainError);
}

TEST(Numeric, RationalHelpers) {
  EXPECT_TRUE(is_integer(Rational(6, 3)));
  EXPECT_FALSE(is_integer(Rational(1, 2)));
  EXPECT_EQ(to_integer(Rational(6, 3)), 2);
  EXPECT_THROW(to_integer(Rational(1, 2)), DomainError);
  EXPECT_EQ(parse_rational("-4/6"), Rational(-2, 3));
  EXPECT_EQ(to_string(Rational(4, 6)), "2/3");
  EXPECT_EQ(to_string(Rational(4, 2)), "2");
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_DOUBLE_EQ(to_double(Rational(1, 4)), 0.25);
}

TEST(Polynomial, UnivariateArithmetic) {
  const UnivariatePolynomial a({2, 1});     // 2 + y
  const UnivariatePolynomial b({1, 0, 1});  // 1 + y^2
  EXPECT_EQ((a * b).coefficients(), (std::vector<BigInt>{2, 1, 2, 1}));
  EXPECT_EQ((a + b).to_string(), "3 + y + y^2");
  EXPECT_EQ(UnivariatePolynomial({0, 0, 0}).degree(), -1);
  EXPECT_TRUE(UnivariatePolynomial({0, 0}).is_zero());
  EXPECT_EQ(UnivariatePolynomial({6, 6, 3, 1}).to_string(), "6 + 6y + 3y^2 + y^3");
  EXPECT_EQ(UnivariatePolynomial({0, -1}).to_string('q'), "-q");
  EXPECT_EQ(a.evaluate(BigInt(3)), 5);
  EXPECT_EQ(b.evaluate(Rational(1, 2)), Rational(5, 4));
  EXPECT_EQ(a + UnivariatePolynomial({-2, -1}), UnivariatePolynomial());
}

TEST(Polynomial, BivariateArithmetic) {
  auto t = BivariatePolynomial::monomial(2, 0) + BivariatePolynomial::monomial(1, 0) + BivariatePolynomial::monomial(0, 1);
  EXPECT_EQ(t.to_string(), "x^2 + x + y");
  EXPECT_EQ(t.evaluate(1, 1), 3);
  EXPECT_EQ(t.at_x_one(), UnivariatePolynomial({2, 1}));
  auto sq = t * t;
  EXPECT_EQ(sq.coefficient(2, 1), 2);
  EXPECT_EQ(sq.evaluate(2, 3), 81);
  t.add_term(0, 1, -1);
  EXPECT_EQ(t.coefficient(0, 1), 0);
  EXPECT_EQ(t.terms().size(), 2U);
  EXPECT_THROW(t.add_term(-1, 0, 1), InputError);
  EXPECT_EQ(BivariatePolynomial().to_string(), "0");
  EXPECT_EQ((BivariatePolynomial::monomial(1, 1, 3) * BigInt(0)).is_zero(), true);
}
