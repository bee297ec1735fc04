#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace widthlab;
using namespace widthlab::test;

TEST(ContainsBall, L1InsideL2) {
  for (std::size_t N : {1u, 4u, 50u}) EXPECT_TRUE(contains_ball(ball(1, 1), ball(2, 1), N));
}

TEST(ContainsBall, EuclideanBallInsideScaledL1Ball) {
  EXPECT_TRUE(contains_ball(ball(2, 1), ball(1, 2), 4));
  EXPECT_FALSE(contains_ball(ball(2, 1), ball(1, 1.9), 4));
}

TEST(Canonicalize, SingletonUnchanged) {
  const auto out = canonicalize(BallIntersection(3, {ball(2, 1)}));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_DOUBLE_EQ(out[0].nu, 1.0);
}

TEST(Canonicalize, DropsRedundantBall) {
  const auto out = canonicalize(BallIntersection(4, {ball(1, 1), ball(2, 1)}));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(out[0].p.is_one());
}

TEST(Canonicalize, KeepsBothAndOrdersByExponent) {
  const auto out = canonicalize(BallIntersection(4, {ball(2, 1), ball(1, 1.9)}));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_TRUE(out[0].p.is_one());
  EXPECT_DOUBLE_EQ(out[1].p.value(), 2.0);
  EXPECT_TRUE(satisfies_ordering(out));
}

TEST(Canonicalize, MergesEqualExponents) {
  const auto out = canonicalize(BallIntersection(4, {ball(2, 3), ball(2, 1), ball(inf, 5)}));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_DOUBLE_EQ(out[0].nu, 1.0);
}

TEST(Membership, Examples) {
  const BallIntersection set(2, {ball(1, 1), ball(inf, 0.5)});
  EXPECT_TRUE(is_member(vec({0, 0}), set));
  EXPECT_TRUE(is_member(vec({0.5, 0.5}), set));
  EXPECT_FALSE(is_member(vec({0.6, 0.4}), set));
  const BallIntersection three(3, {ball(1, 2), ball(2, 0.7), ball(inf, 1)});
  EXPECT_TRUE(is_member(vec({0.7, 0, 0}), three));
}

TEST(Classify, FirstTheoremFamily) {
  const auto flags = classify_regimes(gelfand(100, 25, 2, {ball(1.5, 1), ball(2, 1)}));
  EXPECT_EQ(flags, (RegimeFlags{Regime::thm1, Regime::thm3_part1}));
}

TEST(Classify, PairFamily) {
  const auto flags = classify_regimes(gelfand(16, 4, 4, {ball(2, 1), ball(inf, 0.5)}));
  EXPECT_EQ(flags, (RegimeFlags{Regime::thm2, Regime::thm3_part2}));
  EXPECT_EQ(flags.joined('|'), "THM2|THM3_PART2");
}

TEST(Classify, SingleBall) {
  for (double q : {2.0, 3.0, inf}) {
    EXPECT_TRUE(classify_regimes(gelfand(16, 2, q, {ball(1.5, 1)})).has(Regime::thmb_single));
  }
}

TEST(Classify, FourthTheoremRegimes) {
  EXPECT_EQ(theorem4_regime(gelfand(16, 0, 2, {ball(1.5, 1), ball(4, 1)})), 1);
  EXPECT_EQ(theorem4_regime(gelfand(32, 0, 2, {ball(1.5, 4), ball(4, 1)})), 2);
  HypothesisFailures why;
  EXPECT_EQ(theorem4_regime(gelfand(16, 0, 4, {ball(1.5, 1), ball(4, 1)}), &why), 0);
  EXPECT_FALSE(why.empty());
}

TEST(Classify, HypothesisFailuresAreDescribed) {
  const auto f = check_theorem1(gelfand(16, 4, 4, {ball(2, 1), ball(inf, 0.5)}));
  ASSERT_FALSE(f.empty());
  EXPECT_NE(f.front().find("p_1"), std::string::npos);
}

TEST(Query, ScalingAndSorting) {
  const BallIntersection set(4, {ball(inf, 0.5), ball(1, 2)});
  const auto scaled = set.scaled(3.0);
  EXPECT_DOUBLE_EQ(scaled[0].nu, 1.5);
  const auto sorted = set.sorted();
  EXPECT_TRUE(sorted[0].p.is_one());
}

TEST(Query, ParsesWidthKind) {
  EXPECT_EQ(parse_width_kind("kolmogorov"), WidthKind::kolmogorov);
  EXPECT_THROW(parse_width_kind("bernstein"), error);
}
