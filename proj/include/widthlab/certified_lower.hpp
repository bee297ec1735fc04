#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <vector>

#include "widthlab/ball_model.hpp"
#include "widthlab/errors.hpp"
#include "widthlab/norms.hpp"

namespace widthlab {

/// Exact inf over t >= 0 of half_sq - lin_coeff t + c t^2, clamped below at 0.
inline double quadratic_infimum(double half_sq, double lin_coeff, double c) {
  if (!(c > 0.0)) throw domain_error("quadratic_infimum: c must be positive");
  if (lin_coeff < 0.0) throw domain_error("quadratic_infimum: lin_coeff must be nonnegative");
  return std::max(0.0, half_sq - lin_coeff * lin_coeff / (4.0 * c));
}

struct SpikeBound {
  std::size_t s = 1;
  double A = 0.0;  // dual norm of the spike vector, min_j nu_j s^{1/q - 1/p_j}
  double K = 0.0;  // n^{1/2} s^{1/2 - 1/q} N^{-1/2} ||I : l_2 -> X||
  double bound = 0.0;
};

/// Every quantity needed to re-check a lower bound on the Gelfand width by hand.
struct GluskinCertificate {
  std::size_t s_star = 1;
  double A = 0.0;
  double K = 0.0;
  double c = quadratic_constant;
  double embedding_norm = 0.0;  // ||I : l_2^N -> X||, equal to ||I : X* -> l_2^N||
  double lower_bound = 0.0;
  bool exhaustive = true;       // every s in 1..N was evaluated
  std::vector<SpikeBound> per_s;
};

/// The bound sqrt(inf_t (A^2/2 - 2 A^2 K t + c t^2)) for one spike size s.
inline SpikeBound spike_lower_bound(const WidthQuery& query, std::size_t s, double embed, double c = quadratic_constant) {
  const std::size_t N = query.dim();
  if (s < 1 || s > N) throw domain_error("spike_lower_bound: s must lie in [1, N]");
  SpikeBound out;
  out.s = s;
  out.A = spike_dual_norm(s, query.q(), query.set());
  out.K = std::sqrt(static_cast<double>(query.n())) *
          std::pow(static_cast<double>(s), 0.5 - query.q().reciprocal()) / std::sqrt(static_cast<double>(N)) * embed;
  out.bound = std::sqrt(quadratic_infimum(out.A * out.A / 2.0, 2.0 * out.A * out.A * out.K, c));
  return out;
}

namespace detail {

// Geometric grid plus crossover points s where two balls give the same A(s).
inline std::vector<std::size_t> spike_sizes(const BallIntersection& set, std::size_t N, bool& exhaustive) {
  std::set<std::size_t> sizes;
  exhaustive = N <= 10000;
  if (exhaustive) {
    for (std::size_t s = 1; s <= N; ++s) sizes.insert(s);
    return {sizes.begin(), sizes.end()};
  }
  for (double s = 1.0; s < static_cast<double>(N); s *= 1.05) sizes.insert(static_cast<std::size_t>(s));
  sizes.insert(N);
  const auto& b = set.balls();
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      const double dr = b[i].p.reciprocal() - b[j].p.reciprocal();
      if (dr == 0.0) continue;
      // nu_i / nu_j = s^{1/p_i - 1/p_j}
      const double s = std::pow(b[i].nu / b[j].nu, 1.0 / dr);
      if (!(s >= 1.0) || !(s <= static_cast<double>(N))) continue;
      sizes.insert(static_cast<std::size_t>(std::floor(s)));
      sizes.insert(std::min(N, static_cast<std::size_t>(std::ceil(s))));
    }
  }
  sizes.erase(0);
  return {sizes.begin(), sizes.end()};
}

}  // namespace detail

/// A certified lower bound on the Gelfand (hence also the linear) width of the
/// intersection in l_q^N, maximized over the spike size s.
inline GluskinCertificate gluskin_lower_bound(const WidthQuery& query, double c = quadratic_constant) {
  if (query.kind() == WidthKind::kolmogorov) {
    throw unsupported_pair_error("gluskin_lower_bound: the spike bound applies to Gelfand and linear widths");
  }
  const BallIntersection set = canonicalize(query.set());
  const WidthQuery canon = query.with_set(set);
  const std::size_t N = query.dim();

  GluskinCertificate cert;
  cert.c = c;
  cert.embedding_norm = embedding_norm(lp_norm_spec(N, Exponent::from_value(2.0)), IntersectionNorm{set});
  bool exhaustive = true;
  const auto sizes = detail::spike_sizes(set, N, exhaustive);
  cert.exhaustive = exhaustive;
  cert.lower_bound = -1.0;
  for (std::size_t s : sizes) {
    const SpikeBound sb = spike_lower_bound(canon, s, cert.embedding_norm, c);
    cert.per_s.push_back(sb);
    if (sb.bound > cert.lower_bound) {
      cert.lower_bound = sb.bound;
      cert.s_star = sb.s;
      cert.A = sb.A;
      cert.K = sb.K;
    }
  }
  return cert;
}

/// Lower bound for d_n(V, X), V the hull of the signed-permutation orbit of x,
/// from ||x||_X, the l_2 norm of its supporting functional and ||I : X -> l_2||.
inline double group_lower_bound(double xhat_norm, double b_l2, double embed_norm, std::size_t n, std::size_t N,
                                double c = quadratic_constant) {
  if (!(xhat_norm > 0.0) || !(b_l2 > 0.0) || !(embed_norm > 0.0)) {
    throw domain_error("group_lower_bound: inputs must be positive");
  }
  if (N == 0 || n > N) throw domain_error("group_lower_bound: requires 0 <= n <= N, N >= 1");
  const double lin = 2.0 * xhat_norm * b_l2 * std::sqrt(static_cast<double>(n) / static_cast<double>(N)) * embed_norm;
  return std::sqrt(quadratic_infimum(xhat_norm * xhat_norm / 2.0, lin, c));
}

/// Largest n for which group_lower_bound(1, b_l2, embed_norm, n, N) >= 1/2:
/// floor(alpha N / (b_l2^2 embed_norm^2)) with alpha = c / 4.
inline std::size_t corollary_threshold(double b_l2, double embed_norm, std::size_t N) {
  if (!(b_l2 > 0.0) || !(embed_norm > 0.0)) throw domain_error("corollary_threshold: inputs must be positive");
  const double v = static_cast<double>(N) /
                   (4.0 * quadratic_constant_denominator * b_l2 * b_l2 * embed_norm * embed_norm);
  return static_cast<std::size_t>(std::floor(v));
}

}  // namespace widthlab
