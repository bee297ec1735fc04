#pragma once

#include <cmath>
#include <vector>

#include "widthlab/widthlab.hpp"

namespace widthlab::test {

inline Exponent ex(double p) { return Exponent::from_value(p); }
inline Exponent ex_inf() { return Exponent::infinity(); }
inline Ball ball(double p, double nu) { return Ball{std::isinf(p) ? ex_inf() : ex(p), nu}; }

inline WidthQuery gelfand(std::size_t N, std::size_t n, double q, std::vector<Ball> balls) {
  return WidthQuery(BallIntersection(N, std::move(balls)), n, std::isinf(q) ? ex_inf() : ex(q), WidthKind::gelfand);
}

inline Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double t : v) x[i++] = t;
  return x;
}

constexpr double inf = std::numeric_limits<double>::infinity();

}  // namespace widthlab::test
