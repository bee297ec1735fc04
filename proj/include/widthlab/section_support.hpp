#pragma once

#include <cmath>
#include <cstddef>

#include "widthlab/ball_barrier.hpp"
#include "widthlab/ball_model.hpp"
#include "widthlab/barrier.hpp"
#include "widthlab/dual_norm.hpp"
#include "widthlab/lp_norm.hpp"

namespace widthlab {

struct SectionSupport {
  double value = 0.0;  // <x, y>
  Vector y;            // maximizer, in K and in span(W)
};

namespace detail {

// maximize <x, W w> subject to |W w| <= u coordinatewise and u in K; variables (w, u)
class SectionProblem {
 public:
  SectionProblem(const Matrix& W, const Vector& x, const BallIntersection& K)
      : W_(W), block_(K, W.cols(), W.rows()) {
    const Eigen::Index m = W.cols();
    const Eigen::Index N = W.rows();
    cost_ = Vector::Zero(m + N);
    cost_.head(m) = -(W.transpose() * x);
  }

  Eigen::Index size() const { return cost_.size(); }
  Eigen::Index constraint_count() const { return 2 * W_.rows() + block_.count(); }
  const Vector& cost() const { return cost_; }

  bool slacks(const Vector& v, Vector& g) const {
    const Eigen::Index m = W_.cols();
    const Eigen::Index N = W_.rows();
    const Vector y = W_ * v.head(m);
    for (Eigen::Index i = 0; i < N; ++i) {
      const double u = v[m + i];
      g[2 * i] = u - y[i];
      g[2 * i + 1] = u + y[i];
      if (!(g[2 * i] > 0) || !(g[2 * i + 1] > 0)) return false;
    }
    return block_.slacks(v, g, 2 * N);
  }

  void barrier_derivatives(const Vector& v, const Vector& g, Vector& grad, Matrix& hess) const {
    const Eigen::Index m = W_.cols();
    const Eigen::Index N = W_.rows();
    grad.setZero();
    hess.setZero();
    Vector sum_sq(N), diff_sq(N), grad_w_coef(N);
    for (Eigen::Index i = 0; i < N; ++i) {
      const double a = 1.0 / g[2 * i];
      const double b = 1.0 / g[2 * i + 1];
      sum_sq[i] = a * a + b * b;
      diff_sq[i] = b * b - a * a;
      grad_w_coef[i] = a - b;
      grad[m + i] = -a - b;
    }
    grad.head(m) = W_.transpose() * grad_w_coef;
    hess.topLeftCorner(m, m).noalias() = W_.transpose() * sum_sq.asDiagonal() * W_;
    hess.topRightCorner(m, N).noalias() = W_.transpose() * diff_sq.asDiagonal();
    hess.bottomLeftCorner(N, m) = hess.topRightCorner(m, N).transpose();
    hess.bottomRightCorner(N, N).diagonal() = sum_sq;
    block_.add_derivatives(v, g, 2 * N, grad, hess);
  }

  double interior_level() const { return block_.interior_level(); }

 private:
  Matrix W_;
  Vector cost_;
  BallConstraintBlock block_;
};

}  // namespace detail

/// sup{<x, y> : y in K, y in span(W)} for W with orthonormal columns.
///
/// A single Euclidean ball and the full space are closed forms; otherwise the
/// problem is solved by the log-barrier method to the requested relative gap.
inline SectionSupport section_support(const Matrix& W, const Vector& x, const BallIntersection& K,
                                      double relative_gap = 1e-9) {
  const Eigen::Index N = W.rows();
  const Eigen::Index m = W.cols();
  SectionSupport out;
  out.y = Vector::Zero(N);
  if (m == 0) return out;

  const BallIntersection canon = canonicalize(K);
  if (canon.size() == 1 && canon[0].p.reciprocal() == 0.5) {
    const Vector c = W.transpose() * x;
    const double len = c.norm();
    if (len == 0.0) return out;
    out.y = canon[0].nu / len * (W * c);
    out.value = canon[0].nu * len;
    return out;
  }
  if (m == N) {
    const DualNormResult d = dual_norm_detailed(x, canon);
    out.y = d.witness;
    out.value = x.dot(out.y);
    return out;
  }

  detail::SectionProblem problem(W, x, canon);
  Vector start = Vector::Zero(m + N);
  start.tail(N).setConstant(problem.interior_level());
  BarrierOptions opt;
  opt.relative_gap = relative_gap;
  opt.t_growth = 50.0;
  double min_nu = canon[0].nu;
  for (const Ball& b : canon.balls()) min_nu = std::min(min_nu, b.nu);
  const double size = min_nu * std::max(x.cwiseAbs().maxCoeff(), 1e-300);
  opt.scale = 1e-3 * size;
  opt.newton_tolerance = 1e-8;
  opt.initial_t = 0.1 * static_cast<double>(problem.constraint_count()) / size;
  const BarrierResult sol = barrier_minimize(problem, start, opt);
  out.y = W * sol.v.head(m);
  out.value = x.dot(out.y);
  return out;
}

}  // namespace widthlab
