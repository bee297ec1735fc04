#include <random>

#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace widthlab;
using namespace widthlab::test;

TEST(Norm, UnitVectorHasNormOne) {
  const Vector e1 = vec({1, 0, 0});
  for (double p : {1.0, 1.5, 2.0, 7.0, inf}) EXPECT_DOUBLE_EQ(norm(e1, lp_norm_spec(3, p == inf ? ex_inf() : ex(p))), 1.0);
}

TEST(Norm, AllOnesInL2) { EXPECT_DOUBLE_EQ(norm(vec({1, 1, 1, 1}), lp_norm_spec(4, ex(2))), 2.0); }

TEST(Norm, IntersectionNormIsMaxOfScaledNorms) {
  const BallIntersection set(2, {ball(1, 1), ball(inf, 0.5)});
  EXPECT_DOUBLE_EQ(norm(vec({1, 1}), IntersectionNorm{set}), 2.0);
  EXPECT_DOUBLE_EQ(intersection_norm(vec({1, 0}), set), 2.0);
}

TEST(DualNorm, EuclideanIsSelfDual) {
  EXPECT_NEAR(dual_norm(vec({3, 4}), BallIntersection(2, {ball(2, 1)})), 5.0, 1e-12);
}

TEST(DualNorm, PolytopeVertex) {
  const BallIntersection set(2, {ball(1, 1), ball(inf, 0.5)});
  const auto r = dual_norm_detailed(vec({1, 1}), set);
  EXPECT_NEAR(r.value, 1.0, 1e-6);
  EXPECT_TRUE(is_member(r.witness, set) || intersection_norm(r.witness, set) <= 1.0 + 1e-9);
  EXPECT_LE(r.lower, r.upper + 1e-12);
}

TEST(DualNorm, SpikeVectorMatchesClosedForm) {
  const std::size_t N = 6;
  const Exponent q = ex(3);
  const BallIntersection set(N, {ball(1.25, 2.0), ball(2, 1.0), ball(inf, 0.6)});
  const Vector xhat = support_vector(N, q, N);
  double A = inf;
  for (const Ball& b : set.balls()) {
    A = std::min(A, b.nu * std::pow(static_cast<double>(N), q.reciprocal() - b.p.reciprocal()));
  }
  EXPECT_NEAR(dual_norm(xhat, set), A, 1e-7 * A);
  EXPECT_NEAR(spike_dual_norm(N, q, set), A, 1e-7 * A);
}

TEST(DualNorm, PrimalDualGapIsSmallOnRandomInputs) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  const BallIntersection set(5, {ball(1.5, 1.7), ball(3, 0.9), ball(inf, 0.6)});
  for (int k = 0; k < 20; ++k) {
    Vector z(5);
    for (int i = 0; i < 5; ++i) z[i] = g(rng);
    const auto r = dual_norm_detailed(z, set);
    EXPECT_LE(r.upper - r.lower, 1e-6 * std::max(1.0, r.upper));
    EXPECT_NEAR(z.dot(r.witness), r.lower, 1e-9 * std::max(1.0, r.upper));
    EXPECT_LE(intersection_norm(r.witness, set), 1.0 + 1e-9);
  }
}

TEST(DualNorm, DominatesEveryFeasiblePairing) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  const BallIntersection set(4, {ball(1, 1.5), ball(2, 1)});
  Vector z = vec({0.3, -1.2, 0.8, 0.1});
  const double d = dual_norm(z, set);
  for (int k = 0; k < 2000; ++k) {
    Vector y(4);
    for (int i = 0; i < 4; ++i) y[i] = g(rng);
    y /= intersection_norm(y, set);
    EXPECT_LE(z.dot(y), d + 1e-9);
  }
}

TEST(SupportVector, Examples) {
  EXPECT_TRUE(support_vector(1, ex(2), 5).isApprox(vec({1, 0, 0, 0, 0})));
  const Vector v = support_vector(4, ex(2), 6);
  EXPECT_TRUE(v.isApprox(vec({0.5, 0.5, 0.5, 0.5, 0, 0})));
  const Vector w = support_vector(4, ex_inf(), 4);
  EXPECT_TRUE(w.isApprox(vec({0.25, 0.25, 0.25, 0.25})));
}

TEST(SupportingCoeffs, SingleEuclideanBall) {
  const BallIntersection set(6, {ball(2, 1)});
  EXPECT_TRUE(supporting_functional_coeffs(1, ex(2), set).isApprox(vec({1, 0, 0, 0, 0, 0})));
  EXPECT_TRUE(supporting_functional_coeffs(4, ex(2), set).isApprox(vec({0.5, 0.5, 0.5, 0.5, 0, 0})));
}

TEST(SupportingCoeffs, PairsWithSpikeToDualNorm) {
  const std::size_t N = 8;
  const BallIntersection set(N, {ball(1.5, 2.0), ball(4, 0.8), ball(inf, 0.5)});
  for (std::size_t s = 1; s <= N; ++s) {
    for (double q : {2.0, 4.0, inf}) {
      const Exponent qe = q == inf ? ex_inf() : ex(q);
      const Vector b = supporting_functional_coeffs(s, qe, set);
      const double A = spike_dual_norm(s, qe, set);
      EXPECT_NEAR(b.dot(support_vector(s, qe, N)), A, 1e-9 * A);
      EXPECT_NEAR(intersection_norm(b, set), 1.0, 1e-9);
    }
  }
}

TEST(Embedding, L2IntoL1) { EXPECT_NEAR(embedding_norm(lp_norm_spec(4, ex(2)), lp_norm_spec(4, ex(1))), 2.0, 1e-12); }

TEST(Embedding, IncreasingExponentIsContraction) {
  EXPECT_NEAR(embedding_norm(lp_norm_spec(5, ex(1.5)), lp_norm_spec(5, ex(3))), 1.0, 1e-12);
  EXPECT_NEAR(embedding_norm(lp_norm_spec(5, ex(2)), lp_norm_spec(5, ex_inf())), 1.0, 1e-12);
}

TEST(Embedding, L2IntoIntersectionNorm) {
  const std::size_t N = 16;
  const BallIntersection set(N, {ball(1.5, 1.5), ball(2, 1.0)});
  ASSERT_TRUE(satisfies_ordering(set));
  const double expected = std::pow(16.0, 1.0 / 1.5 - 0.5) / 1.5;
  EXPECT_NEAR(embedding_norm(lp_norm_spec(N, ex(2)), IntersectionNorm{set}), expected, 1e-12);
}

TEST(Functional, SupportsTheNormAtX) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  const BallIntersection set(4, {ball(1.5, 1.2), ball(inf, 0.4)});
  for (int k = 0; k < 50; ++k) {
    Vector x(4);
    for (int i = 0; i < 4; ++i) x[i] = g(rng);
    const NormSpec spec = IntersectionNorm{set};
    const Vector f = supporting_functional(x, spec);
    EXPECT_NEAR(f.dot(x), norm(x, spec), 1e-9 * norm(x, spec));
  }
}

TEST(Constant, QuadraticConstantIsOneTwoHundredth) { EXPECT_DOUBLE_EQ(quadratic_constant, 1.0 / 200.0); }
