#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "widthlab/errors.hpp"
#include "widthlab/exponent.hpp"

namespace widthlab {

template <class T>
struct SobolevLayer {
  int r = 0;  // smoothness
  BasicExponent<T> p;
};

/// An intersection of Sobolev classes W^{r_j}_{p_j} on a John domain in R^d,
/// measured in L_q.
template <class T>
struct BasicSobolevInstance {
  int d = 1;
  BasicExponent<T> q;
  std::vector<SobolevLayer<T>> layers;
};

using SobolevInstance = BasicSobolevInstance<double>;
using ExactSobolevInstance = BasicSobolevInstance<Rational>;

enum class SobolevCase { all_above_q, all_between_two_and_q, small_gap, large_gap, straddling_q, two_layer_l2 };

inline std::string case_tag(SobolevCase c) {
  switch (c) {
    case SobolevCase::all_above_q: return "1";
    case SobolevCase::all_between_two_and_q: return "2";
    case SobolevCase::small_gap: return "3a";
    case SobolevCase::large_gap: return "3b";
    case SobolevCase::straddling_q: return "4";
    case SobolevCase::two_layer_l2: return "5";
  }
  return "?";
}

template <class T>
struct SobolevExponent {
  T theta{};
  SobolevCase which = SobolevCase::all_above_q;
  std::optional<T> theta1;
  std::optional<T> theta2;
  std::optional<T> lambda;                               // the maximizing pair's lambda in case 4, lambda in case 5
  std::optional<std::pair<std::size_t, std::size_t>> pair;  // 0-based (i, j) maximizing pair in case 4
};

namespace detail {

template <class T>
T sobolev_half() {
  return T(1) / T(2);
}

template <class T>
bool nearly_equal(const T& a, const T& b) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::abs(a - b) <= 1e-12 * std::max<T>({T(1), std::abs(a), std::abs(b)});
  } else {
    return a == b;
  }
}

// r/d - 1/p for layer j
template <class T>
T sobolev_slope(const BasicSobolevInstance<T>& inst, std::size_t j) {
  return T(inst.layers[j].r) / T(inst.d) - inst.layers[j].p.reciprocal();
}

}  // namespace detail

/// Every violated hypothesis, in a fixed order; empty iff the instance is admissible.
template <class T>
std::vector<std::string> validate(const BasicSobolevInstance<T>& inst) {
  std::vector<std::string> out;
  const auto& L = inst.layers;
  if (inst.d < 1) out.push_back("d: the dimension must be at least 1");
  if (inst.q.is_infinite()) out.push_back("q: must be finite");
  if (L.size() < 2) out.push_back("layers: at least two layers are required");
  for (std::size_t j = 0; j < L.size(); ++j) {
    if (L[j].r < 0) out.push_back("layers[" + std::to_string(j) + "].r: smoothness must be nonnegative");
    if (L[j].p.is_one()) out.push_back("layers[" + std::to_string(j) + "].p: must exceed 1");
  }
  if (inst.d < 1 || L.empty()) return out;
  for (std::size_t j = 0; j + 1 < L.size(); ++j) {
    if (!(L[j].r > L[j + 1].r)) {
      out.push_back("smoothness order: r_" + std::to_string(j + 1) + " > r_" + std::to_string(j + 2) +
                    " fails (r must be strictly decreasing)");
    }
  }
  for (std::size_t j = 0; j + 1 < L.size(); ++j) {
    if (!(detail::sobolev_slope(inst, j) < detail::sobolev_slope(inst, j + 1))) {
      out.push_back("slope order: r_" + std::to_string(j + 1) + "/d - 1/p_" + std::to_string(j + 1) + " < r_" +
                    std::to_string(j + 2) + "/d - 1/p_" + std::to_string(j + 2) +
                    " fails (r_j/d - 1/p_j must be strictly increasing)");
    }
  }
  const std::size_t s = L.size() - 1;
  if (!(detail::sobolev_slope(inst, s) + inst.q.reciprocal() > T(0))) {
    out.push_back("embedding: r_s/d + 1/q - 1/p_s > 0 fails");
  }
  return out;
}

/// The decay exponent theta with d^n(M, L_q) of order n^{-theta}.
///
/// Throws domain_error for an inadmissible instance, regime_error when no case
/// applies or when the two candidate exponents of cases 3b and 5 coincide.
template <class T>
SobolevExponent<T> width_exponent(const BasicSobolevInstance<T>& inst) {
  using E = BasicExponent<T>;
  const auto violations = validate(inst);
  if (!violations.empty()) {
    std::string msg = "width_exponent: invalid instance";
    for (const auto& v : violations) msg += "; " + v;
    throw domain_error(msg);
  }
  const auto& L = inst.layers;
  const std::size_t s = L.size();
  const E& q = inst.q;
  const E two = E::from_reciprocal(detail::sobolev_half<T>());
  const T d(inst.d);
  const T r1 = T(L.front().r) / d;
  const T rs = T(L.back().r) / d;
  const E& ps = L.back().p;

  bool all_ge_q = true, all_le_q = true, all_ge_two = true, any_gt_q = false, any_lt_q = false;
  for (const auto& layer : L) {
    all_ge_q = all_ge_q && layer.p >= q;
    all_le_q = all_le_q && layer.p <= q;
    all_ge_two = all_ge_two && layer.p >= two;
    any_gt_q = any_gt_q || layer.p > q;
    any_lt_q = any_lt_q || layer.p < q;
  }
  const bool q_ge_two = q >= two;

  SobolevExponent<T> out;
  auto finish = [&](SobolevExponent<T> res) {
    if (!(res.theta > T(0))) throw internal_error("width_exponent: nonpositive exponent");
    return res;
  };
  auto pick_min = [&](T theta1, std::optional<T> theta2) {
    out.theta1 = theta1;
    out.theta2 = theta2;
    if (theta2 && detail::nearly_equal(theta1, *theta2)) {
      throw regime_error("width_exponent: theta1 = theta2 in case " + case_tag(out.which) +
                         ", excluded by the theorem");
    }
    out.theta = theta2 && *theta2 < theta1 ? *theta2 : theta1;
  };

  if (all_ge_q) {
    out.which = SobolevCase::all_above_q;
    out.theta = r1;
    return finish(out);
  }
  if (all_ge_two && all_le_q) {
    out.which = SobolevCase::all_between_two_and_q;
    out.theta = rs + q.reciprocal() - ps.reciprocal();
    return finish(out);
  }
  if (q_ge_two && all_le_q && L.front().p < two) {
    if (r1 - rs <= detail::sobolev_half<T>() - ps.reciprocal()) {
      out.which = SobolevCase::small_gap;
      out.theta = rs + q.reciprocal() - ps.reciprocal();
      return finish(out);
    }
    out.which = SobolevCase::large_gap;
    const T theta1 = r1 + q.reciprocal() - detail::sobolev_half<T>();
    const T den = T(2) * (rs - r1 + ps.dual_reciprocal());
    std::optional<T> theta2;
    if (den > T(0)) theta2 = (rs + q.reciprocal() - ps.reciprocal()) / den;
    pick_min(theta1, theta2);
    return finish(out);
  }
  if (q_ge_two && all_ge_two && any_gt_q && any_lt_q) {
    out.which = SobolevCase::straddling_q;
    bool have = false;
    for (std::size_t i = 0; i < s; ++i) {
      if (!(L[i].p < q)) continue;
      for (std::size_t j = 0; j < s; ++j) {
        if (!(L[j].p > q)) continue;
        const T lam = solve_lambda(L[i].p, L[j].p, q);
        const T v = (T(1) - lam) * T(L[i].r) / d + lam * T(L[j].r) / d;
        if (!have || v > out.theta) {
          have = true;
          out.theta = v;
          out.lambda = lam;
          out.pair = std::make_pair(i, j);
        }
      }
    }
    return finish(out);
  }
  if (q == two && s == 2 && L[0].p < two && L[1].p > two &&
      r1 - rs >= detail::sobolev_half<T>() - L[1].p.reciprocal()) {
    out.which = SobolevCase::two_layer_l2;
    const T lam = solve_lambda(L[0].p, L[1].p, q);
    out.lambda = lam;
    const T ra(L[0].r), rb(L[1].r);
    const T den = T(2) * lam * (rb - ra) + d;
    std::optional<T> theta2;
    if (den > T(0)) theta2 = ((T(1) - lam) * ra + lam * rb) / den;
    pick_min(r1, theta2);
    return finish(out);
  }
  throw regime_error("width_exponent: the parameters fall outside all five cases");
}

}  // namespace widthlab
