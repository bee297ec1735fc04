#include <random>

#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace widthlab;
using namespace widthlab::test;

TEST(SingleBall, EqualExponentsGiveOne) {
  EXPECT_DOUBLE_EQ(single_ball_order(16, 3, ex(2), ex(2)), 1.0);
  EXPECT_DOUBLE_EQ(single_ball_order(16, 3, ex(3), ex(3)), 1.0);
}

TEST(SingleBall, SmallExponentBelowTwo) {
  const double expected = std::min(1.0, std::pow(100.0, 1.0 / 3.0) / 5.0);
  EXPECT_NEAR(single_ball_order(100, 25, ex(2), ex(1.5)), expected, 1e-12);
  EXPECT_NEAR(expected, 0.92832, 1e-5);
}

TEST(SingleBall, ExponentAboveQ) {
  EXPECT_NEAR(single_ball_order(16, 2, ex(2), ex(4)), std::pow(16.0, 0.25), 1e-12);
  EXPECT_NEAR(single_ball_order(16, 2, ex(4), ex_inf()), 2.0, 1e-12);
}

TEST(Thm1Order, MinimumOfTheTwoBranches) {
  const auto r = theorem1_order(gelfand(100, 25, 2, {ball(1.5, 1), ball(2, 1)}));
  EXPECT_NEAR(r.order_value, 0.928317766723, 1e-9);
  double m = inf;
  for (const auto& t : r.trace) m = std::min(m, t.value);
  EXPECT_DOUBLE_EQ(r.order_value, m);
}

TEST(Thm1Order, SmallLastRadiusWins) {
  const auto r = theorem1_order(gelfand(100, 25, 2, {ball(1.5, 1), ball(2, 0.5)}));
  EXPECT_DOUBLE_EQ(r.order_value, 0.5);
}

TEST(Thm1Order, SingleBallConsistency) {
  for (double p : {1.1, 1.25, 1.5, 1.9}) {
    for (std::size_t n : {1u, 5u, 20u}) {
      const auto r = theorem1_order(gelfand(64, n, 2, {ball(p, 1)}));
      EXPECT_DOUBLE_EQ(r.order_value, single_ball_order(64, n, ex(2), ex(p))) << p << " " << n;
    }
  }
}

TEST(Thm2Order, GeometricMeanOfPair) {
  const auto r = theorem2_order(gelfand(16, 4, 4, {ball(2, 1), ball(inf, 0.5)}));
  EXPECT_NEAR(r.order_value, std::sqrt(0.5), 1e-12);
}

TEST(Thm2Order, EqualRadiiGiveTheRadius) {
  const auto r = theorem2_order(gelfand(16, 2, 3, {ball(2, 0.7), ball(4, 0.7), ball(inf, 0.7)}));
  EXPECT_NEAR(r.order_value, 0.7, 1e-12);
}

TEST(Thm2Order, ThreeBallsMatchPairEnumeration) {
  const double nu2 = 0.6, nu3 = 0.3;
  const auto r = theorem2_order(gelfand(16, 2, 3, {ball(2, 1), ball(4, nu2), ball(inf, nu3)}));
  const double lam_24 = solve_lambda(ex(2), ex(4), ex(3));
  const double lam_2inf = solve_lambda(ex(2), ex_inf(), ex(3));
  const double expected = std::min(std::pow(1.0, 1 - lam_24) * std::pow(nu2, lam_24), std::pow(nu3, lam_2inf));
  EXPECT_NEAR(r.order_value, expected, 1e-12);
}

TEST(Thm2Order, RejectsFamilyWithoutStraddle) {
  EXPECT_THROW(theorem2_order(gelfand(16, 2, 4, {ball(2, 1), ball(3, 0.5)})), regime_error);
}

TEST(Thm3Order, SecondPartThreeInfima) {
  const auto r = theorem3_order(gelfand(16, 4, 4, {ball(2, 1), ball(inf, 0.5)}), Theorem3Part::second);
  EXPECT_NEAR(r.order_value, std::sqrt(0.5), 1e-12);
  ASSERT_EQ(r.trace.size(), 3u);
  EXPECT_NEAR(r.trace[0].value, 1.0, 1e-12);
  EXPECT_NEAR(r.trace[1].value, 1.0, 1e-12);
}

TEST(Thm3Order, FirstPartMatchesThm1) {
  const auto q = gelfand(100, 25, 2, {ball(1.5, 1), ball(2, 1)});
  EXPECT_NEAR(theorem3_order(q, Theorem3Part::first).order_value, theorem1_order(q).order_value, 1e-12);
}

TEST(Thm3Order, SingletonReducesToScaledSingleBall) {
  const auto r = theorem3_order(gelfand(64, 8, 2, {ball(1.5, 3)}));
  EXPECT_NEAR(r.order_value, 3 * single_ball_order(64, 8, ex(2), ex(1.5)), 1e-12);
}

TEST(Thm4Order, FirstRegime) {
  const auto r = theorem4_order(gelfand(16, 9, 2, {ball(1.5, 1), ball(4, 1)}));
  EXPECT_NEAR(r.order_value, std::min(1.0, std::cbrt(16.0) / 3.0), 1e-12);
  EXPECT_NEAR(r.order_value, 0.83995, 1e-5);
  EXPECT_FALSE(r.n_range_ok);
}

TEST(Thm4Order, SecondRegime) {
  const auto big = theorem4_order(gelfand(32, 0, 2, {ball(1.5, 4), ball(4, 1)}));
  EXPECT_EQ(big.regime, Regime::thm4_regime2);
  EXPECT_NEAR(big.order_value, std::pow(4.0, 0.6), 1e-12);
  const auto small = theorem4_order(gelfand(16, 0, 2, {ball(1.5, 3), ball(4, 1)}));
  EXPECT_EQ(small.regime, Regime::thm4_regime2);
  EXPECT_NEAR(small.order_value, std::pow(3.0, 0.6), 1e-12);
}

TEST(Thm4Order, EqualRadii) {
  const auto r = theorem4_order(gelfand(16, 0, 2, {ball(1.5, 0.8), ball(4, 0.8)}));
  EXPECT_NEAR(r.order_value, 0.8, 1e-12);
}

TEST(Thm4Order, RatioAboveAllowedRangeIsRejected) {
  EXPECT_THROW(theorem4_order(gelfand(16, 0, 2, {ball(1.5, 4), ball(4, 1)})), regime_error);
}

TEST(InclusionUpper, Examples) {
  EXPECT_DOUBLE_EQ(inclusion_upper_bound(gelfand(8, 0, 3, {ball(3, 0.4)})), 0.4);
  for (std::size_t n = 0; n < 6; ++n) EXPECT_LE(inclusion_upper_bound(gelfand(6, n, inf, {ball(2, 1)})), 1.0);
  EXPECT_LE(inclusion_upper_bound(gelfand(16, 0, 4, {ball(2, 1), ball(inf, 0.5)})), std::sqrt(0.5) + 1e-12);
  EXPECT_EQ(inclusion_upper_bound(gelfand(5, 5, 2, {ball(1.5, 1)})), 0.0);
}

TEST(AllOrders, ReportsEachApplicableTheorem) {
  const auto s = all_orders(gelfand(16, 4, 4, {ball(2, 1), ball(inf, 0.5)}));
  ASSERT_EQ(s.reports.size(), 2u);
  EXPECT_EQ(s.reports[0].regime, Regime::thm2);
  EXPECT_EQ(s.reports[1].regime, Regime::thm3_part2);
  EXPECT_FALSE(s.not_applicable.empty());
}

TEST(AllOrders, ScaleEquivariance) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  const auto base = gelfand(64, 8, 2, {ball(1.5, 2), ball(2, 1)});
  for (int k = 0; k < 20; ++k) {
    const double a = u(rng);
    const auto scaled = base.with_set(base.set().scaled(a));
    const auto s0 = all_orders(base), s1 = all_orders(scaled);
    ASSERT_EQ(s0.reports.size(), s1.reports.size());
    for (std::size_t i = 0; i < s0.reports.size(); ++i) {
      EXPECT_NEAR(s1.reports[i].order_value, a * s0.reports[i].order_value, 1e-12 * a * s0.reports[i].order_value);
    }
    EXPECT_NEAR(inclusion_upper_bound(scaled), a * inclusion_upper_bound(base), 1e-12 * a);
  }
}
