#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "widthlab/lp_norm.hpp"

namespace widthlab {

/// Log-barrier interior-point minimizer for problems of the form
///
///   minimize  cost . v   subject to  g_i(v) > 0,  g_i concave.
///
/// A problem type supplies
///   Eigen::Index size() const;
///   Eigen::Index constraint_count() const;
///   const Vector& cost() const;
///   bool slacks(const Vector& v, Vector& g) const;        // false if some g_i <= 0
///   void barrier_derivatives(const Vector& v, const Vector& g, Vector& grad, Matrix& hess) const;
/// where the derivatives are those of -sum_i log g_i(v).
struct BarrierOptions {
  double relative_gap = 1e-12;  // stop once m / t <= relative_gap * max(|cost . v|, scale)
  double scale = 1.0;
  double t_growth = 16.0;
  double newton_tolerance = 1e-10;  // on half the squared Newton decrement
  int max_centering_steps = 80;
  int max_newton_steps = 2000;
  double initial_t = 0.0;  // 0: m / max(|cost . start|, scale)
};

struct BarrierResult {
  Vector v;
  Vector slacks;
  double objective = 0.0;
  double t = 0.0;  // final barrier weight; multipliers are 1 / (t g_i)
  int newton_steps = 0;
  bool converged = false;
};

template <class Problem>
BarrierResult barrier_minimize(const Problem& problem, Vector start, const BarrierOptions& opt = {}) {
  const Eigen::Index dim = problem.size();
  const double m = static_cast<double>(problem.constraint_count());
  const Vector& c = problem.cost();

  BarrierResult res;
  res.v = std::move(start);
  res.slacks.resize(problem.constraint_count());
  if (!problem.slacks(res.v, res.slacks)) {
    res.objective = c.dot(res.v);
    return res;
  }

  Vector grad(dim);
  Matrix hess(dim, dim);
  Vector g_new(problem.constraint_count());
  Vector trial(dim);

  double t = opt.initial_t > 0.0 ? opt.initial_t : m / std::max(std::abs(c.dot(res.v)), opt.scale);
  int steps = 0;
  bool budget_left = true;

  while (budget_left) {
    // Newton's method on t c.v - sum log g
    for (int inner = 0; inner < opt.max_centering_steps; ++inner) {
      if (steps >= opt.max_newton_steps) {
        budget_left = false;
        break;
      }
      ++steps;
      problem.barrier_derivatives(res.v, res.slacks, grad, hess);
      grad += t * c;
      Eigen::LDLT<Matrix> ldlt(hess);
      Vector dir = ldlt.solve(-grad);
      if (ldlt.info() != Eigen::Success || !dir.allFinite()) {
        const double shift = 1e-12 * std::max(1.0, hess.diagonal().cwiseAbs().maxCoeff());
        Matrix reg = hess;
        reg.diagonal().array() += shift;
        dir = reg.ldlt().solve(-grad);
        if (!dir.allFinite()) dir = -grad;
      }
      double slope = grad.dot(dir);
      if (slope >= 0) {
        dir = -grad;
        slope = -grad.squaredNorm();
      }
      if (-slope * 0.5 <= opt.newton_tolerance) break;

      // Backtracking with the barrier change computed from slack ratios.
      double step = 1.0;
      bool moved = false;
      for (int k = 0; k < 60; ++k, step *= 0.5) {
        trial = res.v + step * dir;
        if (!problem.slacks(trial, g_new)) continue;
        double delta = t * step * c.dot(dir);
        for (Eigen::Index i = 0; i < g_new.size(); ++i) delta -= std::log(g_new[i] / res.slacks[i]);
        if (delta <= 0.25 * step * slope) {
          res.v.swap(trial);
          res.slacks.swap(g_new);
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    const double objective = c.dot(res.v);
    if (m / t <= opt.relative_gap * std::max(std::abs(objective), opt.scale)) {
      res.converged = true;
      break;
    }
    t *= opt.t_growth;
  }
  res.objective = c.dot(res.v);
  res.t = t;
  res.newton_steps = steps;
  return res;
}

}  // namespace widthlab
