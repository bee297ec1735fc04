#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "widthlab/lp_norm.hpp"

namespace widthlab {

struct NelderMeadOptions {
  double step = 0.5;            // initial simplex edge along each axis
  std::size_t max_evaluations = 400;
  double value_tolerance = 1e-10;  // stop when the simplex values agree this closely (absolute)
};

struct NelderMeadResult {
  Vector x;
  double value = 0.0;
  std::size_t evaluations = 0;
};

/// Derivative-free minimization with the adaptive-parameter Nelder-Mead simplex.
template <class F>
NelderMeadResult nelder_mead(F&& f, const Vector& start, const NelderMeadOptions& opt = {}) {
  const Eigen::Index d = start.size();
  NelderMeadResult res;
  res.x = start;
  if (d == 0) {
    res.value = f(start);
    res.evaluations = 1;
    return res;
  }
  const double dd = static_cast<double>(d);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dd;
  const double gamma = 0.75 - 1.0 / (2.0 * dd);
  const double delta = 1.0 - 1.0 / dd;

  std::vector<Vector> pts(static_cast<std::size_t>(d + 1), start);
  std::vector<double> vals(static_cast<std::size_t>(d + 1));
  std::size_t evals = 0;
  auto eval = [&](const Vector& x) {
    ++evals;
    return f(x);
  };
  vals[0] = eval(start);
  for (Eigen::Index i = 0; i < d; ++i) {
    pts[static_cast<std::size_t>(i + 1)][i] += opt.step;
    vals[static_cast<std::size_t>(i + 1)] = eval(pts[static_cast<std::size_t>(i + 1)]);
  }

  std::vector<std::size_t> order(pts.size());
  while (evals < opt.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];
    if (vals[worst] - vals[best] <= opt.value_tolerance) break;

    Vector centroid = Vector::Zero(d);
    for (std::size_t k = 0; k + 1 < order.size(); ++k) centroid += pts[order[k]];
    centroid /= dd;

    const Vector xr = centroid + alpha * (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const Vector xe = centroid + beta * (xr - centroid);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Vector xc = outside ? Vector(centroid + gamma * (xr - centroid))
                              : Vector(centroid - gamma * (centroid - pts[worst]));
    const double fc = eval(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t k = 1; k < order.size(); ++k) {
      const std::size_t i = order[k];
      pts[i] = pts[best] + delta * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  res.x = pts[static_cast<std::size_t>(it - vals.begin())];
  res.value = *it;
  res.evaluations = evals;
  return res;
}

}  // namespace widthlab
