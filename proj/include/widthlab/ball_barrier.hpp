#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "widthlab/ball_model.hpp"
#include "widthlab/lp_norm.hpp"

namespace widthlab::detail {

/// Barrier terms for "u lies in the intersection", u a block of k nonnegative
/// variables inside a larger vector. A finite-p ball contributes the single
/// concave constraint 1 - sum (u_i / nu)^p > 0; p = inf contributes nu - u_i > 0.
class BallConstraintBlock {
 public:
  BallConstraintBlock(const BallIntersection& set, Eigen::Index offset, Eigen::Index k)
      : balls_(set.balls()), offset_(offset), k_(k) {
    for (const Ball& b : balls_) count_ += b.p.is_infinite() ? k_ : 1;
  }

  Eigen::Index count() const noexcept { return count_; }

  /// Writes the constraint values into g[first, first + count()); false if any is <= 0.
  bool slacks(const Vector& v, Vector& g, Eigen::Index first) const {
    Eigen::Index at = first;
    bool ok = true;
    for (const Ball& b : balls_) {
      if (b.p.is_infinite()) {
        for (Eigen::Index i = 0; i < k_; ++i) {
          g[at] = b.nu - v[offset_ + i];
          ok = ok && g[at] > 0;
          ++at;
        }
      } else {
        const double p = 1.0 / b.p.reciprocal();
        double sum = 0.0;
        for (Eigen::Index i = 0; i < k_; ++i) {
          const double u = v[offset_ + i];
          if (u < 0) return false;
          sum += b.p.is_one() ? u / b.nu : std::pow(u / b.nu, p);
        }
        g[at] = 1.0 - sum;
        ok = ok && g[at] > 0;
        ++at;
      }
    }
    return ok;
  }

  /// Adds the gradient and Hessian of -sum log g over this block.
  void add_derivatives(const Vector& v, const Vector& g, Eigen::Index first, Vector& grad, Matrix& hess) const {
    Eigen::Index at = first;
    Vector dg(k_);
    for (const Ball& b : balls_) {
      if (b.p.is_infinite()) {
        for (Eigen::Index i = 0; i < k_; ++i) {
          const double s = g[at++];
          grad[offset_ + i] += 1.0 / s;
          hess(offset_ + i, offset_ + i) += 1.0 / (s * s);
        }
        continue;
      }
      const double s = g[at++];
      const double p = 1.0 / b.p.reciprocal();
      const double scale = std::pow(b.nu, -p);
      for (Eigen::Index i = 0; i < k_; ++i) {
        const double u = v[offset_ + i];
        dg[i] = b.p.is_one() ? -1.0 / b.nu : -p * std::pow(u, p - 1.0) * scale;
      }
      grad.segment(offset_, k_) -= dg / s;
      hess.block(offset_, offset_, k_, k_).noalias() += dg * dg.transpose() / (s * s);
      if (!b.p.is_one()) {
        for (Eigen::Index i = 0; i < k_; ++i) {
          const double u = v[offset_ + i];
          hess(offset_ + i, offset_ + i) += p * (p - 1.0) * std::pow(u, p - 2.0) * scale / s;
        }
      }
    }
  }

  /// A common value theta with (theta, ..., theta) strictly inside every ball.
  double interior_level() const {
    double level = std::numeric_limits<double>::infinity();
    for (const Ball& b : balls_) {
      level = std::min(level, b.nu * std::pow(static_cast<double>(k_), -b.p.reciprocal()));
    }
    return 0.5 * level;
  }

 private:
  std::vector<Ball> balls_;
  Eigen::Index offset_;
  Eigen::Index k_;
  Eigen::Index count_ = 0;
};

}  // namespace widthlab::detail
