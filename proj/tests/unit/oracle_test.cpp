#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace widthlab;
using namespace widthlab::test;

namespace {

OracleOptions quick() {
  OracleOptions o = verification_oracle_options();
  o.restarts = 3;
  o.inner_starts = 12;
  return o;
}

}  // namespace

TEST(Oracle, FullSubspaceGivesZero) {
  const auto e = kolmogorov_estimate(lp_norm_spec(3, ex(2)), lp_norm_spec(3, ex(4)), 3, 1, quick());
  EXPECT_NEAR(e.value, 0.0, 1e-9);
}

TEST(Oracle, ZeroSubspaceGivesRadius) {
  const auto e = kolmogorov_estimate(lp_norm_spec(4, ex(1)), lp_norm_spec(4, ex(2)), 0, 1, quick());
  EXPECT_NEAR(e.value, 1.0, 1e-9);
  EXPECT_TRUE(e.inner_max_exact);
}

TEST(Oracle, EuclideanDiskByLineInMaxNorm) {
  const auto e = kolmogorov_estimate(lp_norm_spec(2, ex(2)), lp_norm_spec(2, ex_inf()), 1, 1, quick());
  EXPECT_NEAR(e.value, std::sqrt(0.5), 1e-3);
}

TEST(Oracle, GelfandEuclideanSections) {
  for (std::size_t n = 1; n < 4; ++n) {
    const auto e = gelfand_estimate(gelfand(4, n, 2, {ball(2, 1)}), 1, quick());
    EXPECT_NEAR(e.value, 1.0, 1e-3) << n;
  }
}

TEST(Oracle, GelfandRadiusOfPolytope) {
  const auto e = gelfand_estimate(gelfand(2, 0, 2, {ball(1, 1), ball(inf, 0.5)}), 1, quick());
  EXPECT_NEAR(e.value, std::sqrt(0.5), 1e-6);
}

TEST(Oracle, GelfandDiskInMaxNorm) {
  const auto e = gelfand_estimate(gelfand(2, 1, inf, {ball(2, 1)}), 1, quick());
  EXPECT_NEAR(e.value, std::sqrt(0.5), 1e-3);
  EXPECT_TRUE(e.inner_max_exact);
}

TEST(Oracle, DualityGapSmall) {
  EXPECT_LE(duality_gap(gelfand(3, 0, 2, {ball(1.5, 1)}), 1, quick()).gap, 1e-6);
  EXPECT_LE(duality_gap(gelfand(3, 1, 2, {ball(1.5, 1)}), 1, quick()).gap, 0.05);
}

TEST(Oracle, SameSeedSameResult) {
  const auto q = gelfand(4, 2, 4, {ball(1.5, 1), ball(inf, 0.6)});
  const auto a = gelfand_estimate(q, 42, quick());
  const auto b = gelfand_estimate(q, 42, quick());
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.restart_values, b.restart_values);
}

TEST(Oracle, EstimateWithinCertifiedBounds) {
  const auto q = gelfand(5, 1, 2, {ball(1, 1.5), ball(inf, 0.5)});
  const auto e = gelfand_estimate(q, 3, quick());
  EXPECT_GE(e.value * 1.05, gluskin_lower_bound(q).lower_bound);
  EXPECT_LE(e.value, inclusion_upper_bound(q) * 1.05);
  EXPECT_GE(e.spread, 0.0);
}

TEST(Oracle, DeskScaleEnforced) {
  const auto q = gelfand(17, 1, 2, {ball(2, 1)});
  EXPECT_THROW(gelfand_estimate(q, 1, quick()), desk_scale_error);
}
