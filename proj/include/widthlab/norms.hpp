#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <variant>

#include "widthlab/ball_model.hpp"
#include "widthlab/dual_norm.hpp"
#include "widthlab/errors.hpp"
#include "widthlab/exponent.hpp"
#include "widthlab/lp_norm.hpp"

namespace widthlab {

/// The constant c of the quadratic lower estimate
///   ||x + h||^2 >= ||x||^2 / 2 + 2 ||x|| f_x(h) + c ||h||^2,
/// valid in every normed space: min(1 / (2 t^2), 1 / 4) with t = 10.
inline constexpr int quadratic_constant_denominator = 200;
inline constexpr double quadratic_constant = 1.0 / quadratic_constant_denominator;

/// ||x|| = ||x||_p / scale, whose unit ball is scale * B_p^N.
struct LpNorm {
  Exponent p;
  double scale = 1.0;
  std::size_t dim = 1;
};

/// max_j ||x||_{p_j} / nu_j, whose unit ball is the intersection.
struct IntersectionNorm {
  BallIntersection set;
};

/// The dual of IntersectionNorm, i.e. the support function of the intersection.
struct DualIntersectionNorm {
  BallIntersection set;
};

using NormSpec = std::variant<LpNorm, IntersectionNorm, DualIntersectionNorm>;

inline NormSpec lp_norm_spec(std::size_t N, Exponent p, double scale = 1.0) {
  if (N == 0) throw domain_error("norm spec: N must be positive");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw domain_error("norm spec: scale must be positive");
  return LpNorm{p, scale, N};
}

inline std::size_t dimension(const NormSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LpNorm>) {
          return s.dim;
        } else {
          return s.set.dim();
        }
      },
      spec);
}

inline double intersection_norm(const Vector& x, const BallIntersection& set) {
  if (static_cast<std::size_t>(x.size()) != set.dim()) throw domain_error("norm: vector length does not match N");
  double m = 0.0;
  for (const Ball& b : set.balls()) m = std::max(m, lp_norm(x, b.p) / b.nu);
  return m;
}

inline double norm(const Vector& x, const NormSpec& spec) {
  if (static_cast<std::size_t>(x.size()) != dimension(spec)) {
    throw domain_error("norm: vector length does not match N");
  }
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LpNorm>) {
          return lp_norm(x, s.p) / s.scale;
        } else if constexpr (std::is_same_v<T, IntersectionNorm>) {
          return intersection_norm(x, s.set);
        } else {
          return dual_norm(x, s.set);
        }
      },
      spec);
}

/// A supporting functional f_x: dual norm 1 and f_x(x) = ||x||.
///
/// For intersection norms the first ball attaining the maximum is used, and its
/// l_p supporting functional is rescaled by 1 / nu_j. For the dual intersection
/// norm the maximizing point of the intersection is returned.
inline Vector supporting_functional(const Vector& x, const NormSpec& spec) {
  if (static_cast<std::size_t>(x.size()) != dimension(spec)) {
    throw domain_error("supporting_functional: vector length does not match N");
  }
  return std::visit(
      [&](const auto& s) -> Vector {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LpNorm>) {
          return lp_supporting_functional(x, s.p) / s.scale;
        } else if constexpr (std::is_same_v<T, IntersectionNorm>) {
          std::size_t best = 0;
          double best_value = -1.0;
          for (std::size_t j = 0; j < s.set.size(); ++j) {
            const double v = lp_norm(x, s.set[j].p) / s.set[j].nu;
            if (v > best_value) {
              best_value = v;
              best = j;
            }
          }
          return lp_supporting_functional(x, s.set[best].p) / s.set[best].nu;
        } else {
          Vector w = dual_norm_detailed(x, s.set).witness;
          if (x.isZero(0.0)) {
            w = Vector::Zero(x.size());
            double nu = s.set[0].nu;
            for (const Ball& b : s.set.balls()) nu = std::min(nu, b.nu);
            w[0] = nu;
          }
          return w;
        }
      },
      spec);
}

/// Operator norm of the identity between two norms on R^N.
///
/// Supported: l_p -> l_q, and l_p -> intersection norm (the Hoelder bound per
/// ball, which is exact for each ball and hence for their maximum).
inline double embedding_norm(const NormSpec& from, const NormSpec& to) {
  if (dimension(from) != dimension(to)) throw domain_error("embedding_norm: dimensions differ");
  const std::size_t N = dimension(from);
  const auto* src = std::get_if<LpNorm>(&from);
  if (src != nullptr) {
    if (const auto* dst = std::get_if<LpNorm>(&to)) {
      return lp_radius(N, src->p, dst->p) * src->scale / dst->scale;
    }
    if (const auto* dst = std::get_if<IntersectionNorm>(&to)) {
      double m = 0.0;
      for (const Ball& b : dst->set.balls()) m = std::max(m, lp_radius(N, src->p, b.p) / b.nu);
      return m * src->scale;
    }
  }
  throw unsupported_pair_error("embedding_norm: only l_p -> l_q and l_p -> intersection norm are supported");
}

/// The spike vector with s^{-1/q'} on the first s coordinates; its l_{q'} norm is 1.
inline Vector support_vector(std::size_t s, const Exponent& q, std::size_t N) {
  if (s < 1 || s > N) throw domain_error("support_vector: s must lie in [1, N]");
  Vector x = Vector::Zero(static_cast<Eigen::Index>(N));
  const double v = std::pow(static_cast<double>(s), -q.dual_reciprocal());
  x.head(static_cast<Eigen::Index>(s)).setConstant(v);
  return x;
}

/// min_j nu_j s^{1/q - 1/p_j}, the dual norm of support_vector(s, q, N).
inline double spike_dual_norm(std::size_t s, const Exponent& q, const BallIntersection& set) {
  double a = std::numeric_limits<double>::infinity();
  const double sd = static_cast<double>(s);
  for (const Ball& b : set.balls()) a = std::min(a, b.nu * std::pow(sd, q.reciprocal() - b.p.reciprocal()));
  return a;
}

/// Coefficients b of the supporting functional at support_vector(s, q, N) in the
/// dual intersection norm: A s^{-1/q} on the first s coordinates.
///
/// Throws internal_error unless <b, xhat> equals the numerically computed dual
/// norm and the intersection norm of b equals 1, both to 1e-9.
inline Vector supporting_functional_coeffs(std::size_t s, const Exponent& q, const BallIntersection& set) {
  const std::size_t N = set.dim();
  const Vector xhat = support_vector(s, q, N);
  const double a = spike_dual_norm(s, q, set);
  Vector b = Vector::Zero(static_cast<Eigen::Index>(N));
  b.head(static_cast<Eigen::Index>(s)).setConstant(a * std::pow(static_cast<double>(s), -q.reciprocal()));

  const double pairing = b.dot(xhat);
  const double dual = dual_norm(xhat, set);
  if (std::abs(pairing - dual) > 1e-9 * std::max(1.0, dual)) {
    throw internal_error("supporting_functional_coeffs: <b, xhat> = " + format_real(pairing) +
                         " differs from the dual norm " + format_real(dual));
  }
  const double bn = intersection_norm(b, set);
  if (std::abs(bn - 1.0) > 1e-9) {
    throw internal_error("supporting_functional_coeffs: ||b||_X = " + format_real(bn) + ", expected 1");
  }
  return b;
}

}  // namespace widthlab
