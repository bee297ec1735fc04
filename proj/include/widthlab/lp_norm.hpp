#pragma once

#include <cmath>
#include <cstddef>

#include <Eigen/Dense>

#include "widthlab/exponent.hpp"

namespace widthlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline double lp_norm(const Vector& x, const Exponent& p) {
  if (x.size() == 0) return 0.0;
  if (p.is_infinite()) return x.cwiseAbs().maxCoeff();
  if (p.is_one()) return x.cwiseAbs().sum();
  if (p.reciprocal() == 0.5) return x.norm();
  const double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  const double pv = 1.0 / p.reciprocal();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) sum += std::pow(std::abs(x[i]) / m, pv);
  return m * std::pow(sum, p.reciprocal());
}

/// A norming functional g of l_p at x: ||g||_{p'} = 1 and <g, x> = ||x||_p.
///
/// Ties (p = inf) and zero coordinates (p = 1) resolve to the lowest index / zero
/// so the choice is deterministic. At x = 0 the functional e_1 is returned.
inline Vector lp_supporting_functional(const Vector& x, const Exponent& p) {
  const Eigen::Index n = x.size();
  Vector g = Vector::Zero(n);
  if (n == 0) return g;
  const double nx = lp_norm(x, p);
  if (nx == 0.0) {
    g[0] = 1.0;
    return g;
  }
  if (p.is_infinite()) {
    Eigen::Index k = 0;
    x.cwiseAbs().maxCoeff(&k);
    g[k] = x[k] > 0 ? 1.0 : -1.0;
    return g;
  }
  if (p.is_one()) {
    for (Eigen::Index i = 0; i < n; ++i) g[i] = x[i] > 0 ? 1.0 : (x[i] < 0 ? -1.0 : 0.0);
    return g;
  }
  const double pm1 = 1.0 / p.reciprocal() - 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = std::pow(std::abs(x[i]) / nx, pm1);
    g[i] = x[i] >= 0 ? a : -a;
  }
  return g;
}

/// sup of ||x||_to over the unit ball of l_from in R^N.
inline double lp_radius(std::size_t N, const Exponent& from, const Exponent& to) {
  const double e = std::max(0.0, to.reciprocal() - from.reciprocal());
  return e == 0.0 ? 1.0 : std::pow(static_cast<double>(N), e);
}

}  // namespace widthlab
