#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "widthlab/errors.hpp"
#include "widthlab/exponent.hpp"
#include "widthlab/lp_norm.hpp"

namespace widthlab {

/// The scaled ball nu * B_p^N.
struct Ball {
  Exponent p;
  double nu = 1.0;
};

/// The intersection of finitely many scaled l_p balls in R^N, i.e. the unit ball
/// of the norm max_j ||x||_{p_j} / nu_j.
class BallIntersection {
 public:
  BallIntersection(std::size_t dim, std::vector<Ball> balls) : dim_(dim), balls_(std::move(balls)) {
    if (dim_ == 0) throw domain_error("ball intersection: dimension N must be positive");
    if (balls_.empty()) throw domain_error("ball intersection: at least one ball is required");
    for (std::size_t j = 0; j < balls_.size(); ++j) {
      const double nu = balls_[j].nu;
      if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw domain_error("ball intersection: balls[" + std::to_string(j) + "].nu must be positive and finite");
      }
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return balls_.size(); }
  const std::vector<Ball>& balls() const noexcept { return balls_; }
  const Ball& operator[](std::size_t j) const { return balls_[j]; }

  /// Same family with every radius multiplied by alpha.
  BallIntersection scaled(double alpha) const {
    std::vector<Ball> b = balls_;
    for (auto& ball : b) ball.nu *= alpha;
    return BallIntersection(dim_, std::move(b));
  }

  /// Same family, stably sorted by p ascending.
  BallIntersection sorted() const {
    std::vector<Ball> b = balls_;
    std::stable_sort(b.begin(), b.end(), [](const Ball& x, const Ball& y) { return x.p < y.p; });
    return BallIntersection(dim_, std::move(b));
  }

 private:
  std::size_t dim_;
  std::vector<Ball> balls_;
};

enum class WidthKind { gelfand, kolmogorov, linear };

inline std::string_view to_string(WidthKind k) {
  switch (k) {
    case WidthKind::gelfand: return "gelfand";
    case WidthKind::kolmogorov: return "kolmogorov";
    case WidthKind::linear: return "linear";
  }
  return "gelfand";
}

inline WidthKind parse_width_kind(std::string_view s) {
  if (s == "gelfand") return WidthKind::gelfand;
  if (s == "kolmogorov") return WidthKind::kolmogorov;
  if (s == "linear") return WidthKind::linear;
  throw parse_error("kind must be one of gelfand, kolmogorov, linear; got '" + std::string(s) + "'");
}

/// One width value to bound or estimate: d^n, d_n or lambda_n of `set` in l_q^N.
class WidthQuery {
 public:
  WidthQuery(BallIntersection set, std::size_t n, Exponent q, WidthKind kind = WidthKind::gelfand)
      : set_(std::move(set)), n_(n), q_(q), kind_(kind) {
    if (n_ > set_.dim()) throw domain_error("width query: n must satisfy 0 <= n <= N");
  }

  const BallIntersection& set() const noexcept { return set_; }
  std::size_t dim() const noexcept { return set_.dim(); }
  std::size_t n() const noexcept { return n_; }
  const Exponent& q() const noexcept { return q_; }
  WidthKind kind() const noexcept { return kind_; }

  WidthQuery with_n(std::size_t n) const { return WidthQuery(set_, n, q_, kind_); }
  WidthQuery with_set(BallIntersection set) const { return WidthQuery(std::move(set), n_, q_, kind_); }

 private:
  BallIntersection set_;
  std::size_t n_;
  Exponent q_;
  WidthKind kind_;
};

/// Exact test of inner.nu * B_{inner.p} being a subset of outer.nu * B_{outer.p} in R^N.
inline bool contains_ball(const Ball& inner, const Ball& outer, std::size_t N) {
  if (N == 0) throw domain_error("contains_ball: N must be positive");
  return inner.nu * lp_radius(N, inner.p, outer.p) <= outer.nu;
}

/// Removes redundant balls without changing the represented set.
///
/// Equal exponents are merged (smaller radius kept), balls are sorted by p, and
/// any ball that contains another member of the family is deleted until none does.
inline BallIntersection canonicalize(const BallIntersection& set) {
  std::vector<Ball> b;
  for (const Ball& ball : set.balls()) {
    auto same = std::find_if(b.begin(), b.end(), [&](const Ball& x) { return x.p == ball.p; });
    if (same == b.end()) {
      b.push_back(ball);
    } else {
      same->nu = std::min(same->nu, ball.nu);
    }
  }
  std::stable_sort(b.begin(), b.end(), [](const Ball& x, const Ball& y) { return x.p < y.p; });

  bool removed = true;
  while (removed && b.size() > 1) {
    removed = false;
    for (std::size_t outer = 0; outer < b.size() && !removed; ++outer) {
      for (std::size_t inner = 0; inner < b.size(); ++inner) {
        if (inner != outer && contains_ball(b[inner], b[outer], set.dim())) {
          b.erase(b.begin() + static_cast<std::ptrdiff_t>(outer));
          removed = true;
          break;
        }
      }
    }
  }
  return BallIntersection(set.dim(), std::move(b));
}

/// p_1 <= ... <= p_r, nu_1 >= ... >= nu_r and nu_j N^{-1/p_j} nondecreasing.
///
/// The two radius chains are checked with a 1e-12 relative slack so that
/// canonicalized families pass despite rounding in the powers of N.
inline bool satisfies_ordering(const BallIntersection& set) {
  const auto& b = set.balls();
  const double N = static_cast<double>(set.dim());
  constexpr double slack = 1e-12;
  for (std::size_t j = 0; j + 1 < b.size(); ++j) {
    if (b[j + 1].p < b[j].p) return false;
    if (b[j + 1].nu > b[j].nu * (1.0 + slack)) return false;
    const double lhs = b[j].nu * std::pow(N, -b[j].p.reciprocal());
    const double rhs = b[j + 1].nu * std::pow(N, -b[j + 1].p.reciprocal());
    if (lhs > rhs * (1.0 + slack)) return false;
  }
  return true;
}

inline bool is_member(const Vector& x, const BallIntersection& set) {
  if (static_cast<std::size_t>(x.size()) != set.dim()) {
    throw domain_error("membership: vector length does not match N");
  }
  for (const Ball& ball : set.balls()) {
    if (lp_norm(x, ball.p) > ball.nu * (1.0 + 1e-12)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Regime classification

enum class Regime : unsigned {
  thm1 = 1u << 0,
  thm2 = 1u << 1,
  thm3_part1 = 1u << 2,
  thm3_part2 = 1u << 3,
  thm4_regime1 = 1u << 4,
  thm4_regime2 = 1u << 5,
  thmb_single = 1u << 6,
};

inline constexpr Regime all_regimes[] = {Regime::thm1,         Regime::thm2,         Regime::thm3_part1,
                                         Regime::thm3_part2,   Regime::thm4_regime1, Regime::thm4_regime2,
                                         Regime::thmb_single};

inline std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::thm1: return "THM1";
    case Regime::thm2: return "THM2";
    case Regime::thm3_part1: return "THM3_PART1";
    case Regime::thm3_part2: return "THM3_PART2";
    case Regime::thm4_regime1: return "THM4_REGIME1";
    case Regime::thm4_regime2: return "THM4_REGIME2";
    case Regime::thmb_single: return "THMB_SINGLE";
  }
  return "?";
}

class RegimeFlags {
 public:
  RegimeFlags() = default;
  RegimeFlags(std::initializer_list<Regime> rs) {
    for (Regime r : rs) set(r);
  }

  void set(Regime r) noexcept { bits_ |= static_cast<unsigned>(r); }
  bool has(Regime r) const noexcept { return (bits_ & static_cast<unsigned>(r)) != 0; }
  bool empty() const noexcept { return bits_ == 0; }
  unsigned bits() const noexcept { return bits_; }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (Regime r : all_regimes) {
      if (has(r)) out.emplace_back(regime_name(r));
    }
    return out;
  }

  std::string joined(char sep = '|') const {
    std::string s;
    for (const auto& name : names()) {
      if (!s.empty()) s.push_back(sep);
      s += name;
    }
    return s;
  }

  friend bool operator==(const RegimeFlags& a, const RegimeFlags& b) { return a.bits_ == b.bits_; }

 private:
  unsigned bits_ = 0;
};

/// Cutoffs for the hypotheses that involve unspecified absolute constants.
struct RegimeOptions {
  double a0 = 0.01;             // n <= a0 N (THM4 regime 1), n <= a0 (nu1/nu2)^{2 lambda - 2} N (regime 2)
  double half_cutoff = 0.5;     // n <= N/2
  double quarter_cutoff = 0.25; // n <= N/4
};

/// Unmet hypotheses for one regime; empty means the regime applies.
using HypothesisFailures = std::vector<std::string>;

namespace detail {

inline bool q_at_least_two(const Exponent& q) { return q.reciprocal() <= 0.5; }

inline bool n_within(std::size_t n, std::size_t N, double fraction) {
  return static_cast<double>(n) <= fraction * static_cast<double>(N);
}

}  // namespace detail

inline HypothesisFailures check_theorem1(const WidthQuery& query, const RegimeOptions& opt = {}) {
  HypothesisFailures f;
  const BallIntersection s = query.set().sorted();
  const auto& b = s.balls();
  if (!detail::q_at_least_two(query.q())) f.push_back("requires q >= 2");
  if (b.front().p.is_one()) f.push_back("requires p_1 > 1");
  if (!(b.front().p.reciprocal() > 0.5)) f.push_back("requires p_1 < 2");
  if (b.back().p > query.q()) f.push_back("requires p_r <= q");
  if (!satisfies_ordering(s)) f.push_back("requires the radius chains nu_1 >= ... >= nu_r, nu_j N^{-1/p_j} nondecreasing");
  if (!detail::n_within(query.n(), query.dim(), opt.half_cutoff)) f.push_back("requires n <= N/2");
  return f;
}

inline HypothesisFailures check_theorem2(const WidthQuery& query, const RegimeOptions& opt = {}) {
  HypothesisFailures f;
  const BallIntersection s = query.set().sorted();
  const auto& b = s.balls();
  if (!detail::q_at_least_two(query.q())) f.push_back("requires q >= 2");
  if (!(b.front().p.reciprocal() <= 0.5)) f.push_back("requires p_1 >= 2");
  if (!(b.front().p < query.q() && query.q() < b.back().p)) f.push_back("requires p_1 < q < p_r");
  if (!satisfies_ordering(s)) f.push_back("requires the radius chains nu_1 >= ... >= nu_r, nu_j N^{-1/p_j} nondecreasing");
  if (!detail::n_within(query.n(), query.dim(), opt.quarter_cutoff)) f.push_back("requires n <= N/4");
  return f;
}

inline HypothesisFailures check_theorem3_part1(const WidthQuery& query, const RegimeOptions& opt = {}) {
  HypothesisFailures f;
  if (!detail::q_at_least_two(query.q())) f.push_back("requires q >= 2");
  for (const Ball& ball : query.set().balls()) {
    if (ball.p.is_one()) {
      f.push_back("requires inf p_alpha > 1");
      break;
    }
  }
  for (const Ball& ball : query.set().balls()) {
    if (ball.p > query.q()) {
      f.push_back("requires p_alpha <= q for every alpha");
      break;
    }
  }
  if (!detail::n_within(query.n(), query.dim(), opt.half_cutoff)) f.push_back("requires n <= N/2");
  return f;
}

inline HypothesisFailures check_theorem3_part2(const WidthQuery& query, const RegimeOptions& opt = {}) {
  HypothesisFailures f;
  if (!detail::q_at_least_two(query.q())) f.push_back("requires q >= 2");
  for (const Ball& ball : query.set().balls()) {
    if (ball.p.reciprocal() > 0.5) {
      f.push_back("requires p_alpha >= 2 for every alpha");
      break;
    }
  }
  if (!detail::n_within(query.n(), query.dim(), opt.quarter_cutoff)) f.push_back("requires n <= N/4");
  return f;
}

/// Which THM4 regime the parameters fall in, ignoring the range of n.
/// Returns 0 together with the failures when the structural hypotheses fail.
inline int theorem4_regime(const WidthQuery& query, HypothesisFailures* failures = nullptr) {
  HypothesisFailures f;
  const BallIntersection s = query.set().sorted();
  const auto& b = s.balls();
  if (query.q().reciprocal() != 0.5) f.push_back("requires q = 2");
  if (b.size() != 2) {
    f.push_back("requires exactly two balls");
  } else {
    const double r1 = b[0].p.reciprocal();
    const double r2 = b[1].p.reciprocal();
    if (!(r1 < 1.0 && r1 > 0.5)) f.push_back("requires 1 < p_1 < 2");
    if (!(r2 < 0.5)) f.push_back("requires p_2 > 2");
    const double ratio = b[0].nu / b[1].nu;
    const double N = static_cast<double>(query.dim());
    if (ratio < 1.0) f.push_back("requires nu_1/nu_2 >= 1");
    if (ratio > std::pow(N, r1 - r2)) f.push_back("requires nu_1/nu_2 <= N^{1/p_1 - 1/p_2}");
  }
  const bool ok = f.empty();
  if (failures) *failures = std::move(f);
  if (!ok) return 0;
  const double ratio = b[0].nu / b[1].nu;
  const double N = static_cast<double>(query.dim());
  return ratio <= std::pow(N, b[0].p.reciprocal() - 0.5) ? 1 : 2;
}

/// The THM4 range condition on n for the regime the parameters fall in.
inline bool theorem4_n_in_range(const WidthQuery& query, const RegimeOptions& opt = {}) {
  const int regime = theorem4_regime(query);
  if (regime == 0) return false;
  const BallIntersection s = query.set().sorted();
  const double N = static_cast<double>(query.dim());
  const double n = static_cast<double>(query.n());
  if (regime == 1) return n <= opt.a0 * N;
  const double lambda = solve_lambda(s[0].p, s[1].p, query.q());
  const double ratio = s[0].nu / s[1].nu;
  return n <= opt.a0 * std::pow(ratio, 2.0 * lambda - 2.0) * N;
}

inline HypothesisFailures check_single_ball(const WidthQuery& query, const RegimeOptions& opt = {}) {
  HypothesisFailures f;
  if (query.set().size() != 1) f.push_back("requires a single ball");
  if (!detail::q_at_least_two(query.q())) f.push_back("requires q >= 2");
  if (query.set()[0].p.is_one()) f.push_back("requires p > 1");
  if (!detail::n_within(query.n(), query.dim(), opt.half_cutoff)) f.push_back("requires n <= N/2");
  return f;
}

/// Regimes whose full hypothesis lists (including the range of n) hold.
///
/// Works on the family as given, sorted by p; redundant balls are not removed,
/// so the caller decides whether to canonicalize first.
inline RegimeFlags classify_regimes(const WidthQuery& query, const RegimeOptions& opt = {}) {
  RegimeFlags flags;
  if (check_theorem1(query, opt).empty()) flags.set(Regime::thm1);
  if (check_theorem2(query, opt).empty()) flags.set(Regime::thm2);
  if (check_theorem3_part1(query, opt).empty()) flags.set(Regime::thm3_part1);
  if (check_theorem3_part2(query, opt).empty()) flags.set(Regime::thm3_part2);
  if (const int regime = theorem4_regime(query); regime != 0 && theorem4_n_in_range(query, opt)) {
    flags.set(regime == 1 ? Regime::thm4_regime1 : Regime::thm4_regime2);
  }
  if (check_single_ball(query, opt).empty()) flags.set(Regime::thmb_single);
  return flags;
}

}  // namespace widthlab
