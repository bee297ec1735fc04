#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace widthlab;
using namespace widthlab::test;

TEST(Exponent, DualOfThreeHalvesIsThree) {
  const ExactExponent p = parse_exact_exponent("3/2");
  EXPECT_EQ(p.dual(), parse_exact_exponent("3"));
}

TEST(Exponent, DualOfInfinityIsOne) {
  EXPECT_TRUE(ExactExponent::infinity().dual().is_one());
  EXPECT_TRUE(ex_inf().dual().is_one());
}

TEST(Exponent, TwoIsSelfDual) { EXPECT_EQ(parse_exact_exponent("2").dual(), parse_exact_exponent("2")); }

TEST(Exponent, DoubleDualIsIdentityExactly) {
  for (const char* s : {"1", "5/4", "3/2", "2", "7/3", "4", "inf"}) {
    const ExactExponent p = parse_exact_exponent(s);
    EXPECT_EQ(p.dual().dual(), p) << s;
  }
  for (double v : {1.0, 1.1, 1.5, 2.0, 3.0, 17.0}) {
    const Exponent p = ex(v);
    EXPECT_EQ(p.dual().dual().reciprocal(), p.reciprocal());
  }
}

TEST(Exponent, ReciprocalStaysInUnitInterval) {
  EXPECT_DOUBLE_EQ(ex(1.0).reciprocal(), 1.0);
  EXPECT_DOUBLE_EQ(ex_inf().reciprocal(), 0.0);
  EXPECT_DOUBLE_EQ(ex(4.0).dual_reciprocal(), 0.75);
}

TEST(Exponent, ParsesNumbersFractionsAndInfinity) {
  EXPECT_DOUBLE_EQ(parse_exponent("1.5").value(), 1.5);
  EXPECT_DOUBLE_EQ(parse_exponent("10/9").reciprocal(), 0.9);
  EXPECT_TRUE(parse_exponent("inf").is_infinite());
  EXPECT_EQ(parse_exact_exponent("1.25"), parse_exact_exponent("5/4"));
}

TEST(Exponent, RejectsExponentsBelowOne) {
  EXPECT_THROW(parse_exponent("0.5"), error);
  EXPECT_THROW(parse_exact_exponent("1/2"), error);
  EXPECT_THROW(parse_exponent("abc"), error);
}

TEST(Lambda, InterpolatesBetweenTwoAndInfinity) {
  EXPECT_DOUBLE_EQ(solve_lambda(ex(2), ex_inf(), ex(4)), 0.5);
  EXPECT_DOUBLE_EQ(solve_lambda(ex(2), ex_inf(), ex(2)), 0.0);
}

TEST(Lambda, ExactValueForThreeHalvesAndFour) {
  const Rational lam =
      solve_lambda(parse_exact_exponent("3/2"), parse_exact_exponent("4"), parse_exact_exponent("2"));
  EXPECT_EQ(lam, Rational(2, 5));
  EXPECT_EQ((Rational(1) - lam) * Rational(2, 3) + lam * Rational(1, 4), Rational(1, 2));
}

TEST(Lambda, RejectsBadOrderingAndEqualExponents) {
  EXPECT_THROW(solve_lambda(ex(2), ex(2), ex(2)), domain_error);
  EXPECT_THROW(solve_lambda(ex(2), ex(4), ex(8)), domain_error);
}

TEST(Format, TwelveSignificantDigits) {
  EXPECT_EQ(format_real(std::sqrt(0.5)), "0.707106781187");
  EXPECT_EQ(format_real(1.0), "1");
  EXPECT_EQ(format_real(inf), "inf");
  EXPECT_EQ(format_rational(Rational(3, 4)), "3/4");
}
