#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "widthlab/ball_model.hpp"
#include "widthlab/errors.hpp"
#include "widthlab/exponent.hpp"

namespace widthlab {

/// Computes the interpolation parameter for (p_i, p_j, q); replaceable for mutation tests.
using LambdaRule = double (*)(const Exponent&, const Exponent&, const Exponent&);

inline double standard_lambda(const Exponent& p_i, const Exponent& p_j, const Exponent& q) {
  return solve_lambda(p_i, p_j, q);
}

struct FormulaOptions {
  RegimeOptions regime;
  LambdaRule lambda = standard_lambda;
};

struct TraceEntry {
  std::string branch;
  double value = 0.0;
};

/// Order estimate of one theorem together with the certified upper bound.
///
/// order_value carries the unknown absolute constants of the theorem;
/// certified_upper is a genuine upper bound on the width.
struct BoundReport {
  WidthQuery query;
  Regime regime;
  double order_value = 0.0;
  double certified_upper = 0.0;
  std::vector<TraceEntry> trace;
  bool linear_applicable = false;  // the theorem also states the order of the linear width
  bool n_range_ok = true;          // advisory range condition on n (THM4)
  Exponent p1;                     // smallest exponent; the THM1 constants depend on it
};

namespace detail {

inline double min_of(const std::vector<TraceEntry>& trace) {
  double v = std::numeric_limits<double>::infinity();
  for (const auto& e : trace) v = std::min(v, e.value);
  return v;
}

inline std::string join_failures(const std::string& what, const HypothesisFailures& f) {
  std::string s = what + " does not apply:";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i == 0 ? " " : "; ") + f[i];
  return s;
}

inline std::string exponent_label(const Exponent& p) { return format_exponent(p); }

}  // namespace detail

/// n^{-1/2} N^{1/p'}, and +inf at n = 0 so that a surrounding min ignores it.
inline double small_n_branch(std::size_t n, std::size_t N, const Exponent& p) {
  if (n == 0) return std::numeric_limits<double>::infinity();
  return std::pow(static_cast<double>(n), -0.5) * std::pow(static_cast<double>(N), p.dual_reciprocal());
}

/// Order of d^n(B_p^N, l_q^N) for n <= N/2, q >= 2, p > 1.
inline double single_ball_order(std::size_t N, std::size_t n, const Exponent& q, const Exponent& p,
                                const RegimeOptions& opt = {}) {
  if (n > N) throw domain_error("single_ball_order: n must satisfy n <= N");
  HypothesisFailures f;
  if (!detail::n_within(n, N, opt.half_cutoff)) f.push_back("requires n <= N/2");
  if (!detail::q_at_least_two(q)) f.push_back("requires q >= 2");
  if (p.is_one()) f.push_back("requires p > 1");
  if (!f.empty()) throw regime_error(detail::join_failures("single-ball estimate", f));
  if (p >= q) return std::pow(static_cast<double>(N), q.reciprocal() - p.reciprocal());
  if (p.reciprocal() <= 0.5) return 1.0;
  return std::min(1.0, small_n_branch(n, N, p));
}

/// A certified upper bound on the n-width of the intersection in l_q^N, valid
/// for the Gelfand, Kolmogorov and linear widths alike.
///
/// Minimum over single balls and over pairwise Hoelder inclusions
/// nu_i B_{p_i} cap nu_j B_{p_j} in nu_i^{1-lambda} nu_j^lambda B_{p(lambda)}
/// (lambda on a 33-point grid plus the value that lands exactly on q) of the
/// radius times the coordinate-section bound (N - n)^{max(0, 1/q - 1/p)}.
inline double inclusion_upper_bound(const WidthQuery& query) {
  const std::size_t N = query.dim();
  const std::size_t n = query.n();
  if (n >= N) return 0.0;
  const BallIntersection set = canonicalize(query.set());
  const Exponent& q = query.q();
  const double room = static_cast<double>(N - n);
  auto section = [&](const Exponent& p) {
    const double e = std::max(0.0, q.reciprocal() - p.reciprocal());
    return e == 0.0 ? 1.0 : std::pow(room, e);
  };

  double best = std::numeric_limits<double>::infinity();
  const auto& b = set.balls();
  for (const Ball& ball : b) best = std::min(best, ball.nu * section(ball.p));
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      std::vector<double> lambdas;
      for (int k = 0; k <= 32; ++k) lambdas.push_back(k / 32.0);
      const Exponent& lo = b[i].p < b[j].p ? b[i].p : b[j].p;
      const Exponent& hi = b[i].p < b[j].p ? b[j].p : b[i].p;
      if (lo <= q && q <= hi) {
        const double lam = solve_lambda(lo, hi, q);
        lambdas.push_back(b[i].p < b[j].p ? lam : 1.0 - lam);
      }
      for (double lam : lambdas) {
        const double radius = std::pow(b[i].nu, 1.0 - lam) * std::pow(b[j].nu, lam);
        best = std::min(best, radius * section(interpolate(b[i].p, b[j].p, lam)));
      }
    }
  }
  return best;
}

namespace detail {

inline BoundReport make_report(const WidthQuery& query, Regime regime, std::vector<TraceEntry> trace) {
  BoundReport r{query, regime};
  r.trace = std::move(trace);
  r.order_value = min_of(r.trace);
  r.certified_upper = inclusion_upper_bound(query);
  Exponent p1 = query.set()[0].p;
  for (const Ball& b : query.set().balls()) p1 = std::min(p1, b.p);
  r.p1 = p1;
  return r;
}

}  // namespace detail

/// min{nu_1 n^{-1/2} N^{1/p_1'}, nu_r} for 1 < p_1 < 2, p_r <= q, radii chains, n <= N/2.
inline BoundReport theorem1_order(const WidthQuery& query, const FormulaOptions& opt = {}) {
  if (auto f = check_theorem1(query, opt.regime); !f.empty()) {
    throw regime_error(detail::join_failures("THM1", f));
  }
  const BallIntersection s = query.set().sorted();
  const Ball& first = s.balls().front();
  const Ball& last = s.balls().back();
  std::vector<TraceEntry> trace{
      {"nu_1 n^{-1/2} N^{1/p_1'}", first.nu * small_n_branch(query.n(), query.dim(), first.p)},
      {"nu_r", last.nu},
  };
  return detail::make_report(query, Regime::thm1, std::move(trace));
}

/// min over p_i <= q <= p_j of nu_i^{1-lambda_ij} nu_j^{lambda_ij}.
inline BoundReport theorem2_order(const WidthQuery& query, const FormulaOptions& opt = {}) {
  if (auto f = check_theorem2(query, opt.regime); !f.empty()) {
    throw regime_error(detail::join_failures("THM2", f));
  }
  const BallIntersection s = query.set().sorted();
  const Exponent& q = query.q();
  std::vector<TraceEntry> trace;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i].p <= q)) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (!(s[j].p >= q)) continue;
      const std::string label = "pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      if (s[i].p == s[j].p) {
        trace.push_back({label, std::min(s[i].nu, s[j].nu)});
        continue;
      }
      const double lam = opt.lambda(s[i].p, s[j].p, q);
      trace.push_back({label, std::pow(s[i].nu, 1.0 - lam) * std::pow(s[j].nu, lam)});
    }
  }
  return detail::make_report(query, Regime::thm2, std::move(trace));
}

enum class Theorem3Part { automatic, first, second };

/// The estimate for an arbitrary finite family (no ordering or radius chain required).
///
/// Part 1 (all p <= q): inf nu_a min{1, n^{-1/2} N^{1/p_a'}}.
/// Part 2 (all p >= 2): min of inf_{p >= q} nu N^{1/q - 1/p}, inf_{p <= q} nu and
/// the cross-pair interpolations over p_a < q < p_b.
inline BoundReport theorem3_order(const WidthQuery& query, Theorem3Part part = Theorem3Part::automatic,
                                  const FormulaOptions& opt = {}) {
  const auto f1 = check_theorem3_part1(query, opt.regime);
  const auto f2 = check_theorem3_part2(query, opt.regime);
  if (part == Theorem3Part::automatic) {
    if (f1.empty()) {
      part = Theorem3Part::first;
    } else if (f2.empty()) {
      part = Theorem3Part::second;
    } else {
      throw regime_error(detail::join_failures("THM3_PART1", f1) + "; " +
                         detail::join_failures("THM3_PART2", f2));
    }
  }
  const auto& balls = query.set().balls();
  const Exponent& q = query.q();
  const std::size_t N = query.dim();
  std::vector<TraceEntry> trace;

  if (part == Theorem3Part::first) {
    if (!f1.empty()) throw regime_error(detail::join_failures("THM3_PART1", f1));
    bool linear = true;
    for (std::size_t a = 0; a < balls.size(); ++a) {
      const Ball& b = balls[a];
      trace.push_back({"ball " + std::to_string(a + 1) + " (p=" + detail::exponent_label(b.p) + ")",
                       b.nu * std::min(1.0, small_n_branch(query.n(), N, b.p))});
      if (q.reciprocal() + b.p.reciprocal() > 1.0) linear = false;
    }
    BoundReport r = detail::make_report(query, Regime::thm3_part1, std::move(trace));
    r.linear_applicable = linear;
    return r;
  }

  if (!f2.empty()) throw regime_error(detail::join_failures("THM3_PART2", f2));
  double above = std::numeric_limits<double>::infinity();
  double below = std::numeric_limits<double>::infinity();
  double cross = std::numeric_limits<double>::infinity();
  for (const Ball& b : balls) {
    if (b.p >= q) above = std::min(above, b.nu * std::pow(static_cast<double>(N), q.reciprocal() - b.p.reciprocal()));
    if (b.p <= q) below = std::min(below, b.nu);
  }
  for (const Ball& a : balls) {
    if (!(a.p < q)) continue;
    for (const Ball& b : balls) {
      if (!(b.p > q)) continue;
      const double lam = opt.lambda(a.p, b.p, q);
      cross = std::min(cross, std::pow(a.nu, 1.0 - lam) * std::pow(b.nu, lam));
    }
  }
  trace.push_back({"inf over p >= q of nu N^{1/q-1/p}", above});
  trace.push_back({"inf over p <= q of nu", below});
  trace.push_back({"inf over p_a < q < p_b of nu_a^{1-lambda} nu_b^lambda", cross});
  BoundReport r = detail::make_report(query, Regime::thm3_part2, std::move(trace));
  r.linear_applicable = true;
  return r;
}

/// Two balls in l_2^N with 1 < p_1 < 2 < p_2 and 1 <= nu_1/nu_2 <= N^{1/p_1 - 1/p_2}.
///
/// Regime 1 (nu_1/nu_2 <= N^{1/p_1 - 1/2}): min{nu_1^{1-lambda} nu_2^lambda, nu_1 n^{-1/2} N^{1/p_1'}};
/// regime 2: nu_1^{1-lambda} nu_2^lambda. The range condition on n is reported in
/// n_range_ok and does not prevent evaluation.
inline BoundReport theorem4_order(const WidthQuery& query, const FormulaOptions& opt = {}) {
  HypothesisFailures f;
  const int regime = theorem4_regime(query, &f);
  if (regime == 0) throw regime_error(detail::join_failures("THM4", f));
  const BallIntersection s = query.set().sorted();
  const double lam = opt.lambda(s[0].p, s[1].p, query.q());
  std::vector<TraceEntry> trace{
      {"nu_1^{1-lambda} nu_2^lambda", std::pow(s[0].nu, 1.0 - lam) * std::pow(s[1].nu, lam)}};
  if (regime == 1) {
    trace.push_back({"nu_1 n^{-1/2} N^{1/p_1'}", s[0].nu * small_n_branch(query.n(), query.dim(), s[0].p)});
  }
  BoundReport r =
      detail::make_report(query, regime == 1 ? Regime::thm4_regime1 : Regime::thm4_regime2, std::move(trace));
  r.n_range_ok = theorem4_n_in_range(query, opt.regime);
  return r;
}

/// Single ball: the classical single-ball order scaled by nu, with the linear-width flag of its item.
inline BoundReport single_ball_report(const WidthQuery& query, const FormulaOptions& opt = {}) {
  if (auto f = check_single_ball(query, opt.regime); !f.empty()) {
    throw regime_error(detail::join_failures("single-ball estimate", f));
  }
  const Ball& b = query.set()[0];
  const Exponent& q = query.q();
  const double v = b.nu * single_ball_order(query.dim(), query.n(), q, b.p, opt.regime);
  std::string branch;
  if (b.p >= q) {
    branch = "nu N^{1/q-1/p}";
  } else if (b.p.reciprocal() <= 0.5) {
    branch = "nu";
  } else {
    branch = "nu min{1, n^{-1/2} N^{1/p'}}";
  }
  BoundReport r = detail::make_report(query, Regime::thmb_single, {{branch, v}});
  r.linear_applicable = b.p.reciprocal() <= 0.5 || q.reciprocal() + b.p.reciprocal() <= 1.0;
  return r;
}

/// Reports for every theorem whose hypotheses hold, plus the reasons the others do not.
struct OrderSummary {
  std::vector<BoundReport> reports;
  std::vector<std::pair<std::string, std::string>> not_applicable;  // (theorem, reason)
};

inline OrderSummary all_orders(const WidthQuery& query, const FormulaOptions& opt = {}) {
  OrderSummary out;
  auto attempt = [&](const std::string& name, auto&& fn) {
    try {
      out.reports.push_back(fn());
    } catch (const regime_error& e) {
      out.not_applicable.emplace_back(name, e.what());
    }
  };
  attempt("THM1", [&] { return theorem1_order(query, opt); });
  attempt("THM2", [&] { return theorem2_order(query, opt); });
  attempt("THM3_PART1", [&] { return theorem3_order(query, Theorem3Part::first, opt); });
  attempt("THM3_PART2", [&] { return theorem3_order(query, Theorem3Part::second, opt); });
  attempt("THM4", [&] { return theorem4_order(query, opt); });
  attempt("THMB_SINGLE", [&] { return single_ball_report(query, opt); });
  return out;
}

}  // namespace widthlab
