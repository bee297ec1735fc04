#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "widthlab/ball_barrier.hpp"
#include "widthlab/ball_model.hpp"
#include "widthlab/barrier.hpp"
#include "widthlab/errors.hpp"
#include "widthlab/lp_norm.hpp"

namespace widthlab {

struct DualNormOptions {
  double solver_gap = 1e-12;   // relative barrier gap requested from the interior-point solve
  double accept_gap = 1e-6;    // relative lower/upper gap beyond which the result is flagged
  int max_iterations = 2000;   // Newton step budget
};

/// sup{<z, y> : y in the intersection} with a certificate on both sides.
struct DualNormResult {
  double value = 0.0;  // the upper bound
  double lower = 0.0;  // <z, witness>
  double upper = 0.0;  // Lagrangian bound, equal to an infimal-convolution value
  Vector witness;      // feasible point of the intersection attaining `lower`
  bool converged = true;
  bool closed_form = false;
  int iterations = 0;
};

namespace detail {

// maximize <|z|, y> over y >= 0 in the intersection, y restricted to supp(z)
class SupportProblem {
 public:
  SupportProblem(const Vector& weights, const BallIntersection& set)
      : cost_(-weights), block_(set, 0, weights.size()) {}

  Eigen::Index size() const { return cost_.size(); }
  Eigen::Index constraint_count() const { return cost_.size() + block_.count(); }
  const Vector& cost() const { return cost_; }

  bool slacks(const Vector& v, Vector& g) const {
    const Eigen::Index k = cost_.size();
    for (Eigen::Index i = 0; i < k; ++i) {
      g[i] = v[i];
      if (!(v[i] > 0)) return false;
    }
    return block_.slacks(v, g, k);
  }

  void barrier_derivatives(const Vector& v, const Vector& g, Vector& grad, Matrix& hess) const {
    const Eigen::Index k = cost_.size();
    grad.setZero();
    hess.setZero();
    for (Eigen::Index i = 0; i < k; ++i) {
      grad[i] -= 1.0 / g[i];
      hess(i, i) += 1.0 / (g[i] * g[i]);
    }
    block_.add_derivatives(v, g, k, grad, hess);
  }

  double interior_level() const { return block_.interior_level(); }

 private:
  Vector cost_;
  BallConstraintBlock block_;
};

// max over 0 <= y <= cap of a*y - sum_j mu_j (y / nu_j)^{p_j}
inline double separable_max(double a, double cap, const std::vector<Ball>& balls, const std::vector<double>& mu) {
  auto slope = [&](double y) {
    double d = a;
    for (std::size_t j = 0; j < balls.size(); ++j) {
      if (mu[j] == 0.0) continue;
      const Ball& b = balls[j];
      if (b.p.is_one()) {
        d -= mu[j] / b.nu;
      } else {
        const double p = 1.0 / b.p.reciprocal();
        d -= mu[j] * p * std::pow(y, p - 1.0) / std::pow(b.nu, p);
      }
    }
    return d;
  };
  auto value = [&](double y) {
    double f = a * y;
    for (std::size_t j = 0; j < balls.size(); ++j) {
      if (mu[j] == 0.0) continue;
      const Ball& b = balls[j];
      f -= mu[j] * (b.p.is_one() ? y / b.nu : std::pow(y / b.nu, 1.0 / b.p.reciprocal()));
    }
    return f;
  };
  if (slope(cap) >= 0) return value(cap);
  if (slope(0.0) <= 0) return 0.0;
  double lo = 0.0;
  double hi = cap;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (slope(mid) > 0 ? lo : hi) = mid;
  }
  return std::max({value(lo), value(hi), 0.0});
}

}  // namespace detail

/// The dual norm of the intersection norm, i.e. the support function of the
/// intersection, evaluated at z.
///
/// One ball (after canonicalization) and one-coordinate z are closed forms.
/// Otherwise the support problem is solved by a log-barrier method on |z|, and
/// the barrier multipliers give a Lagrangian upper bound; the result carries
/// both sides and is flagged when they differ by more than accept_gap.
inline DualNormResult dual_norm_detailed(const Vector& z, const BallIntersection& set,
                                         const DualNormOptions& opt = {}) {
  const std::size_t N = set.dim();
  if (static_cast<std::size_t>(z.size()) != N) throw domain_error("dual_norm: vector length does not match N");

  const BallIntersection canon = canonicalize(set);
  DualNormResult res;
  res.witness = Vector::Zero(static_cast<Eigen::Index>(N));

  if (canon.size() == 1) {
    const Ball& b = canon[0];
    res.value = res.lower = res.upper = b.nu * lp_norm(z, b.p.dual());
    res.witness = b.nu * lp_supporting_functional(z, b.p.dual());
    res.closed_form = true;
    return res;
  }

  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (z[i] != 0.0) support.push_back(i);
  }
  const auto k = static_cast<Eigen::Index>(support.size());
  double min_nu = canon[0].nu;
  for (const Ball& b : canon.balls()) min_nu = std::min(min_nu, b.nu);

  if (k == 0) {
    res.closed_form = true;
    return res;
  }
  if (k == 1) {
    const Eigen::Index i = support[0];
    res.value = res.lower = res.upper = std::abs(z[i]) * min_nu;
    res.witness[i] = z[i] > 0 ? min_nu : -min_nu;
    res.closed_form = true;
    return res;
  }

  Vector weights(k);
  for (Eigen::Index i = 0; i < k; ++i) weights[i] = std::abs(z[support[i]]);
  const double wmax = weights.maxCoeff();
  weights /= wmax;

  detail::SupportProblem problem(weights, BallIntersection(static_cast<std::size_t>(k), canon.balls()));
  BarrierOptions bopt;
  bopt.relative_gap = opt.solver_gap;
  bopt.scale = min_nu * 1e-3;
  bopt.max_newton_steps = opt.max_iterations;
  const BarrierResult sol =
      barrier_minimize(problem, Vector::Constant(k, problem.interior_level()), bopt);
  res.iterations = sol.newton_steps;

  double lower = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double y = sol.v[i];
    lower += weights[i] * y;
    res.witness[support[i]] = z[support[i]] > 0 ? y : -y;
  }

  // Lagrangian bound: one multiplier per finite ball, the sup-norm ball kept as a box.
  // Barrier multipliers 1/(t g_j) lose accuracy once the slacks are tiny, so a
  // second candidate is fitted to the stationarity equations on the free coordinates.
  double cap = min_nu;
  std::vector<Ball> finite;
  std::vector<double> mu;
  std::vector<bool> active;
  Eigen::Index at = k;
  for (const Ball& b : canon.balls()) {
    if (b.p.is_infinite()) {
      cap = b.nu;
      at += k;
      continue;
    }
    finite.push_back(b);
    mu.push_back(sol.t > 0 ? 1.0 / (sol.t * sol.slacks[at]) : 0.0);
    active.push_back(sol.slacks[at] < 1e-6);
    ++at;
  }
  auto dual_value = [&](const std::vector<double>& m) {
    double u = 0.0;
    for (double x : m) u += x;
    for (Eigen::Index i = 0; i < k; ++i) u += detail::separable_max(weights[i], cap, finite, m);
    return u;
  };
  double upper = dual_value(mu);

  std::vector<Eigen::Index> free_rows;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (sol.v[i] < cap * (1.0 - 1e-7) && sol.v[i] > 1e-12 * cap) free_rows.push_back(i);
  }
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < finite.size(); ++j) {
    if (active[j]) cols.push_back(j);
  }
  if (!free_rows.empty() && !cols.empty()) {
    Matrix D(static_cast<Eigen::Index>(free_rows.size()), static_cast<Eigen::Index>(cols.size()));
    Vector rhs(D.rows());
    for (Eigen::Index r = 0; r < D.rows(); ++r) {
      const double y = sol.v[free_rows[r]];
      rhs[r] = weights[free_rows[r]];
      for (Eigen::Index c = 0; c < D.cols(); ++c) {
        const Ball& b = finite[cols[c]];
        const double p = 1.0 / b.p.reciprocal();
        D(r, c) = b.p.is_one() ? 1.0 / b.nu : p * std::pow(y, p - 1.0) / std::pow(b.nu, p);
      }
    }
    const Vector fit = D.colPivHouseholderQr().solve(rhs);
    std::vector<double> mu_fit(finite.size(), 0.0);
    for (std::size_t c = 0; c < cols.size(); ++c) mu_fit[cols[c]] = std::max(0.0, fit[static_cast<Eigen::Index>(c)]);
    upper = std::min(upper, dual_value(mu_fit));
  }
  upper = std::max(upper, lower);

  res.lower = lower * wmax;
  res.upper = upper * wmax;
  res.value = res.upper;
  res.converged = sol.converged && (res.upper - res.lower) <= opt.accept_gap * std::max(res.upper, 1e-300);
  return res;
}

inline double dual_norm(const Vector& z, const BallIntersection& set, const DualNormOptions& opt = {}) {
  return dual_norm_detailed(z, set, opt).value;
}

}  // namespace widthlab
