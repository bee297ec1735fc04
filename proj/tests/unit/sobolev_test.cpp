#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace widthlab;

namespace {

ExactSobolevInstance make(int d, const char* q, std::vector<std::pair<int, const char*>> layers) {
  ExactSobolevInstance inst;
  inst.d = d;
  inst.q = parse_exact_exponent(q);
  for (const auto& [r, p] : layers) inst.layers.push_back({r, parse_exact_exponent(p)});
  return inst;
}

}  // namespace

TEST(SobolevValidate, AcceptsWorkedInstance) { EXPECT_TRUE(validate(make(3, "2", {{2, "10/9"}, {1, "2"}})).empty()); }

TEST(SobolevValidate, RejectsEqualSmoothness) {
  const auto v = validate(make(3, "2", {{1, "10/9"}, {1, "2"}}));
  ASSERT_FALSE(v.empty());
  EXPECT_NE(v.front().find("smoothness order"), std::string::npos);
}

TEST(SobolevValidate, RejectsSlopeOrder) {
  const auto v = validate(make(3, "2", {{2, "3/2"}, {1, "2"}}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v.front().find("slope order"), std::string::npos);
}

TEST(SobolevValidate, RejectsExponentOneAndSingleLayer) {
  EXPECT_FALSE(validate(make(3, "2", {{2, "1"}, {1, "2"}})).empty());
  EXPECT_FALSE(validate(make(3, "2", {{2, "3/2"}})).empty());
  EXPECT_THROW(width_exponent(make(3, "2", {{2, "3/2"}, {1, "2"}})), domain_error);
}

TEST(SobolevExponent, AllAboveQ) {
  const auto r = width_exponent(make(2, "5/4", {{3, "5/4"}, {2, "inf"}}));
  EXPECT_EQ(r.which, SobolevCase::all_above_q);
  EXPECT_EQ(r.theta, Rational(3, 2));
}

TEST(SobolevExponent, LargeGapWorkedInstance) {
  const auto r = width_exponent(make(3, "2", {{2, "10/9"}, {1, "2"}}));
  EXPECT_EQ(case_tag(r.which), "3b");
  EXPECT_EQ(*r.theta1, Rational(2, 3));
  EXPECT_EQ(*r.theta2, Rational(1));
  EXPECT_EQ(r.theta, Rational(2, 3));
}

TEST(SobolevExponent, TwoLayerEuclideanWorkedInstance) {
  const auto r = width_exponent(make(4, "2", {{3, "3/2"}, {2, "4"}}));
  EXPECT_EQ(case_tag(r.which), "5");
  EXPECT_EQ(*r.lambda, Rational(2, 5));
  EXPECT_EQ(*r.theta1, Rational(3, 4));
  EXPECT_EQ(*r.theta2, Rational(13, 16));
  EXPECT_EQ(r.theta, Rational(3, 4));
}

TEST(SobolevExponent, StraddlingPicksBestPair) {
  const auto r = width_exponent(make(4, "4", {{2, "2"}, {1, "8"}}));
  EXPECT_EQ(r.which, SobolevCase::straddling_q);
  EXPECT_EQ(r.theta, Rational(1, 3));
  EXPECT_EQ(*r.lambda, Rational(2, 3));
}

TEST(SobolevExponent, SmallGapAndBoundaryContinuity) {
  auto path = [](double t) {
    SobolevInstance inst;
    inst.d = 4;
    inst.q = Exponent::from_value(8.0);
    inst.layers = {{2, Exponent::from_value(1.2)}, {1, Exponent::from_reciprocal(0.25 + t)}};
    return inst;
  };
  const auto below = width_exponent(path(-1e-10));
  const auto above = width_exponent(path(1e-10));
  EXPECT_EQ(below.which, SobolevCase::small_gap);
  EXPECT_EQ(above.which, SobolevCase::large_gap);
  EXPECT_NEAR(below.theta, above.theta, 1e-9);
  EXPECT_NEAR(below.theta, 0.125, 1e-9);
}

TEST(SobolevExponent, ExactBoundaryIsSmallGap) {
  const auto r = width_exponent(make(4, "8", {{2, "6/5"}, {1, "4"}}));
  EXPECT_EQ(r.which, SobolevCase::small_gap);
  EXPECT_EQ(r.theta, Rational(1, 8));
}

TEST(SobolevExponent, OutsideAllCases) {
  EXPECT_THROW(width_exponent(make(4, "3/2", {{2, "6/5"}, {1, "4"}})), regime_error);
}

TEST(SobolevExponent, InfiniteQRejected) {
  EXPECT_FALSE(validate(make(2, "inf", {{3, "5/4"}, {2, "inf"}})).empty());
}
