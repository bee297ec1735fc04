#include <random>

#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace widthlab;
using namespace widthlab::test;

TEST(QuadraticInfimum, NoLinearTerm) { EXPECT_DOUBLE_EQ(quadratic_infimum(0.7, 0.0, quadratic_constant), 0.7); }

TEST(QuadraticInfimum, ClosedFormAgainstGrid) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double h = u(rng), b = 0.1 * u(rng), c = 0.001 + u(rng);
    const double argmin = b / (2 * c);
    double grid = h;
    for (int i = 0; i <= 200000; ++i) {
      const double t = 2 * argmin * i / 200000.0;
      grid = std::min(grid, h - b * t + c * t * t);
    }
    EXPECT_NEAR(quadratic_infimum(h, b, c), std::max(0.0, grid), 1e-9);
  }
}

TEST(QuadraticInfimum, ClampsAtZero) { EXPECT_EQ(quadratic_infimum(0.5, 2.0, quadratic_constant), 0.0); }

TEST(SpikeLowerBound, NoConstraintsGiveHalfSpikeNorm) {
  const auto q = gelfand(8, 0, 3, {ball(1.5, 1.3), ball(inf, 0.6)});
  const auto cert = gluskin_lower_bound(q);
  double best = 0;
  for (std::size_t s = 1; s <= 8; ++s) best = std::max(best, spike_dual_norm(s, q.q(), q.set()) / std::sqrt(2.0));
  EXPECT_GE(cert.lower_bound, best - 1e-12);
  EXPECT_EQ(cert.K, 0.0);
}

TEST(SpikeLowerBound, LargeEuclideanInstance) {
  const auto q = gelfand(1000, 1, 2, {ball(2, 1)});
  const auto s = spike_lower_bound(q, 1000, 1.0);
  EXPECT_NEAR(s.A, 1.0, 1e-12);
  EXPECT_NEAR(s.K, std::sqrt(1.0 / 1000), 1e-12);
  EXPECT_NEAR(s.bound, std::sqrt(0.3), 1e-12);
  EXPECT_NEAR(gluskin_lower_bound(q).lower_bound, std::sqrt(0.3), 1e-9);
}

TEST(SpikeLowerBound, ClampWhenConstraintsDominate) {
  const auto q = gelfand(1000, 10, 2, {ball(2, 1)});
  EXPECT_EQ(spike_lower_bound(q, 1000, 1.0).bound, 0.0);
}

TEST(SpikeLowerBound, CertificateCarriesIntermediates) {
  const auto cert = gluskin_lower_bound(gelfand(12, 0, 2, {ball(2, 1)}));
  EXPECT_EQ(cert.c, quadratic_constant);
  EXPECT_TRUE(cert.exhaustive);
  EXPECT_EQ(cert.per_s.size(), 12u);
  EXPECT_NEAR(cert.lower_bound, std::sqrt(0.5), 1e-12);
}

TEST(SpikeLowerBound, RejectsKolmogorov) {
  const WidthQuery q(BallIntersection(4, {ball(2, 1)}), 1, ex(2), WidthKind::kolmogorov);
  EXPECT_THROW(gluskin_lower_bound(q), unsupported_pair_error);
}

TEST(SpikeLowerBound, MonotoneInNAndBelowUpperBound) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  const double ps[] = {1.0, 1.5, 2.0, 3.0, inf};
  const double qs[] = {2.0, 4.0, inf};
  for (int k = 0; k < 40; ++k) {
    const std::size_t N = 2 + rng() % 15;
    std::vector<Ball> balls;
    const std::size_t r = 1 + rng() % 3;
    for (std::size_t j = 0; j < r; ++j) balls.push_back(ball(ps[rng() % 5], u(rng)));
    const double q = qs[rng() % 3];
    double prev = inf;
    for (std::size_t n = 0; n <= N; ++n) {
      const auto query = gelfand(N, n, q, balls);
      const double lo = gluskin_lower_bound(query).lower_bound;
      EXPECT_LE(lo, prev + 1e-15);
      EXPECT_LE(lo, inclusion_upper_bound(query));
      prev = lo;
    }
  }
}

TEST(GroupBound, NoConstraints) { EXPECT_NEAR(group_lower_bound(1.4, 1.0, 1.0, 0, 100), 1.4 / std::sqrt(2.0), 1e-12); }

TEST(GroupBound, MatchesSpikeBound) {
  const std::size_t N = 10;
  const auto q = gelfand(N, 1, 4, {ball(1.5, 2.0), ball(inf, 0.4)});
  const double embed = embedding_norm(lp_norm_spec(N, ex(2)), IntersectionNorm{q.set()});
  for (std::size_t s = 1; s <= N; ++s) {
    const Vector b = supporting_functional_coeffs(s, q.q(), q.set());
    const double A = spike_dual_norm(s, q.q(), q.set());
    EXPECT_NEAR(group_lower_bound(A, b.norm(), embed, q.n(), N), spike_lower_bound(q, s, embed).bound, 1e-9);
  }
}

TEST(GroupBound, CorollaryThresholdGivesHalf) {
  EXPECT_GE(group_lower_bound(1.0, 1.0, 1.0, 1, 800), 0.5 - 1e-15);
}

TEST(Corollary, Threshold) {
  EXPECT_EQ(corollary_threshold(1.0, 1.0, 800), 1u);
  EXPECT_EQ(corollary_threshold(1.0, 1.0, 799), 0u);
  EXPECT_EQ(corollary_threshold(1.0, 1.0, 80000), 100u);
  EXPECT_EQ(corollary_threshold(2.0, 1.0, 80000), 25u);
}
