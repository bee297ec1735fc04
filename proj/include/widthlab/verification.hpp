#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "widthlab/ball_model.hpp"
#include "widthlab/certified_lower.hpp"
#include "widthlab/dual_norm.hpp"
#include "widthlab/errors.hpp"
#include "widthlab/exponent.hpp"
#include "widthlab/norms.hpp"
#include "widthlab/oracle.hpp"
#include "widthlab/order_formulas.hpp"
#include "widthlab/sobolev.hpp"

namespace widthlab {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::size_t inconclusive = 0;  // oracle instances whose restart spread exceeded the threshold
  std::string detail;
  std::vector<std::string> counterexamples;  // at most a handful, for the report
};

/// lambda computed with p_i and p_j exchanged, i.e. 1 - lambda; used to check that
/// the consistency suite notices a wrong interpolation parameter.
inline double swapped_lambda(const Exponent& p_i, const Exponent& p_j, const Exponent& q) {
  return (p_j.reciprocal() - q.reciprocal()) / (p_j.reciprocal() - p_i.reciprocal());
}

/// Oracle budgets used by the verification suites: smaller than the library
/// defaults so the full run stays within a few minutes on one core.
inline OracleOptions verification_oracle_options() {
  OracleOptions o;
  o.restarts = 4;
  o.inner_starts = 16;
  o.start_candidates = 16;
  o.rounds = 3;
  o.evaluations_per_round = 100;
  return o;
}

struct VerifyOptions {
  std::uint64_t seed = 1;
  double c = quadratic_constant;          // constant checked by the norm-inequality suite
  LambdaRule lambda = standard_lambda;    // interpolation rule handed to the order formulas
  RegimeOptions regime;
  OracleOptions oracle = verification_oracle_options();
  double delta = 0.05;                    // tolerance band for oracle comparisons
  double spread_threshold = 0.05;         // relative restart spread above which an instance is inconclusive
  std::size_t norm_samples = 100000;
  std::size_t sobolev_samples = 100000;
};

namespace detail {

class SuiteRecorder {
 public:
  explicit SuiteRecorder(std::string name) { res_.name = std::move(name); }

  void check(bool ok, const std::function<std::string()>& describe) {
    ++res_.checks;
    if (ok) return;
    ++res_.failures;
    if (res_.counterexamples.size() < 5) res_.counterexamples.push_back(describe());
  }

  void inconclusive(const std::string& what) {
    ++res_.inconclusive;
    if (res_.counterexamples.size() < 5) res_.counterexamples.push_back("inconclusive: " + what);
  }

  SuiteResult finish(std::string detail) {
    res_.passed = res_.failures == 0;
    res_.detail = std::move(detail);
    return std::move(res_);
  }

 private:
  SuiteResult res_;
};

inline std::string describe(const WidthQuery& q) {
  std::ostringstream s;
  s << "N=" << q.dim() << " n=" << q.n() << " q=" << format_exponent(q.q()) << " balls=";
  for (std::size_t j = 0; j < q.set().size(); ++j) {
    s << (j ? "," : "") << "(" << format_exponent(q.set()[j].p) << "," << format_real(q.set()[j].nu) << ")";
  }
  return s.str();
}

inline Exponent pick_exponent(std::mt19937_64& rng, const std::vector<double>& values) {
  const double p = values[std::uniform_int_distribution<std::size_t>(0, values.size() - 1)(rng)];
  return std::isinf(p) ? Exponent::infinity() : Exponent::from_value(p);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng));
}

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline BallIntersection random_family(std::mt19937_64& rng, std::size_t N, std::size_t r,
                                      const std::vector<double>& exponents) {
  std::vector<Ball> balls;
  for (std::size_t j = 0; j < r; ++j) balls.push_back({pick_exponent(rng, exponents), log_uniform(rng, 0.25, 4.0)});
  return BallIntersection(N, std::move(balls));
}

inline bool spread_too_large(const OracleEstimate& e, double threshold) {
  return e.spread > threshold * std::max(e.value, 1e-12);
}

// Random vector from a mixture that includes ties and zeros, where supporting
// functionals are not unique.
inline Vector random_point(std::mt19937_64& rng, std::size_t N) {
  std::normal_distribution<double> gauss;
  const Eigen::Index n = static_cast<Eigen::Index>(N);
  Vector x(n);
  switch (uniform_index(rng, 0, 3)) {
    case 0:
      for (Eigen::Index i = 0; i < n; ++i) x[i] = gauss(rng);
      break;
    case 1:
      for (Eigen::Index i = 0; i < n; ++i) x[i] = static_cast<double>(uniform_index(rng, 0, 2)) - 1.0;
      break;
    case 2:
      x.setZero();
      x[static_cast<Eigen::Index>(uniform_index(rng, 0, N - 1))] = gauss(rng);
      break;
    default:
      for (Eigen::Index i = 0; i < n; ++i) x[i] = uniform_index(rng, 0, 1) ? gauss(rng) : 0.0;
      break;
  }
  if (x.isZero(0.0)) x[0] = 1.0;
  return x * log_uniform(rng, 0.1, 10.0);
}

}  // namespace detail

/// ||x + h||^2 >= ||x||^2 / 2 + 2 ||x|| f_x(h) + c ||h||^2 on random pairs, over
/// l_p norms and random intersection norms.
inline SuiteResult verify_norm_inequality(const VerifyOptions& opt) {
  detail::SuiteRecorder rec("norm_inequality");
  std::mt19937_64 rng(splitmix64(opt.seed ^ 0x1001));
  const std::vector<double> ps{1.0, 1.5, 2.0, 3.0, std::numeric_limits<double>::infinity()};
  const std::vector<std::size_t> dims{2, 4, 8, 16};
  std::normal_distribution<double> gauss;
  double worst = std::numeric_limits<double>::infinity();
  const std::size_t samples = opt.norm_samples;
  for (std::size_t k = 0; k < samples; ++k) {
    const std::size_t N = dims[k % dims.size()];
    NormSpec spec;
    if ((k / dims.size()) % 2 == 0) {
      spec = lp_norm_spec(N, detail::pick_exponent(rng, ps));
    } else {
      spec = IntersectionNorm{detail::random_family(rng, N, detail::uniform_index(rng, 2, 3), ps)};
    }
    const Vector x = detail::random_point(rng, N);
    Vector dir(static_cast<Eigen::Index>(N));
    if (detail::uniform_index(rng, 0, 1) == 0) {
      for (Eigen::Index i = 0; i < dir.size(); ++i) dir[i] = gauss(rng);
    } else {
      dir = detail::random_point(rng, N) - x / norm(x, spec) * norm(detail::random_point(rng, N), spec);
    }
    if (dir.isZero(0.0)) dir[0] = 1.0;
    const double nx = norm(x, spec);
    const Vector h = dir / norm(dir, spec) * nx * detail::log_uniform(rng, 0.01, 100.0);
    const Vector f = supporting_functional(x, spec);
    const double nh = norm(h, spec);
    const double lhs = std::pow(norm(x + h, spec), 2);
    const double rhs = nx * nx / 2.0 + 2.0 * nx * f.dot(h) + opt.c * nh * nh;
    const double slack = (lhs - rhs) / (nx * nx + nh * nh);
    worst = std::min(worst, slack);
    rec.check(slack >= -1e-12, [&] {
      std::ostringstream s;
      s << "violation at N=" << N << " ||x||=" << format_real(nx) << " ||h||=" << format_real(nh)
        << " lhs=" << format_real(lhs) << " rhs=" << format_real(rhs);
      return s.str();
    });
  }
  return rec.finish("c=" + format_real(opt.c) + ", worst normalized slack " + format_real(worst));
}

/// The closed-form infimum of A^2/2 - 2 A^2 K t + c t^2 over t >= 0 against a
/// grid search refined by golden-section search.
inline SuiteResult verify_quadratic(const VerifyOptions& opt) {
  detail::SuiteRecorder rec("quadratic");
  std::mt19937_64 rng(splitmix64(opt.seed ^ 0x2002));
  double worst = 0.0;
  for (std::size_t k = 0; k < 100; ++k) {
    const double A = detail::log_uniform(rng, 0.05, 20.0);
    const double c = k % 4 == 0 ? quadratic_constant : detail::log_uniform(rng, 1e-3, 1.0);
    // K spans both sides of the clamp threshold K^2 = c / (2 A^2)
    const double K = k % 10 == 0 ? 0.0 : std::sqrt(c / (2.0 * A * A)) * detail::log_uniform(rng, 0.1, 10.0);
    const double half_sq = A * A / 2.0;
    const double b = 2.0 * A * A * K;
    const double closed = quadratic_infimum(half_sq, b, c);

    auto f = [&](double t) { return half_sq - b * t + c * t * t; };
    const double hi = 10.0 * std::max(b / (2.0 * c), 1e-3);
    const int grid = 1000;
    int best_i = 0;
    for (int i = 1; i <= grid; ++i) {
      if (f(hi * i / grid) < f(hi * best_i / grid)) best_i = i;
    }
    double lo_t = hi * std::max(0, best_i - 1) / grid;
    double hi_t = hi * std::min(grid, best_i + 1) / grid;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 200 && hi_t - lo_t > 1e-15 * hi; ++it) {
      const double a = hi_t - phi * (hi_t - lo_t);
      const double d = lo_t + phi * (hi_t - lo_t);
      if (f(a) <= f(d)) {
        hi_t = d;
      } else {
        lo_t = a;
      }
    }
    const double brute = std::max(0.0, std::min({f(0.5 * (lo_t + hi_t)), f(hi * best_i / grid), f(0.0)}));
    const double err = std::abs(brute - closed) / std::max(1.0, half_sq);
    worst = std::max(worst, err);
    rec.check(err <= 1e-9, [&] {
      return "A=" + format_real(A) + " K=" + format_real(K) + " c=" + format_real(c) + " closed=" + format_real(closed) +
             " search=" + format_real(brute);
    });
  }
  return rec.finish("max scaled difference " + format_real(worst));
}

/// Primal Gelfand estimate against the dual Kolmogorov estimate on small instances.
inline SuiteResult verify_duality(const VerifyOptions& opt) {
  detail::SuiteRecorder rec("duality");
  std::mt19937_64 rng(splitmix64(opt.seed ^ 0x3003));
  const std::vector<double> ps{1.0, 1.5, 2.0, 3.0, 4.0, std::numeric_limits<double>::infinity()};
  double worst = 0.0;
  std::size_t index = 0;
  for (std::size_t N = 2; N <= 4; ++N) {
    for (std::size_t n = 0; n <= N; ++n, ++index) {
      const Exponent q = index % 2 == 0 ? Exponent::from_value(2.0) : Exponent::infinity();
      const BallIntersection set = detail::random_family(rng, N, detail::uniform_index(rng, 1, 2), ps);
      const WidthQuery query(set, n, q);
      const DualityCheck d = duality_gap(query, opt.seed + index, opt.oracle);
      worst = std::max(worst, d.gap);
      const bool ok = d.gap <= opt.delta;
      const bool unsure = detail::spread_too_large(d.primal, opt.spread_threshold) ||
                          detail::spread_too_large(d.dual, opt.spread_threshold);
      if (!ok && unsure) {
        rec.inconclusive(detail::describe(query));
        continue;
      }
      rec.check(ok, [&] {
        return detail::describe(query) + " primal=" + format_real(d.primal.value) + " dual=" + format_real(d.dual.value);
      });
    }
  }
  return rec.finish("12 instances, max |primal - dual| " + format_real(worst));
}

/// Widths known in closed form, reproduced by the oracle.
inline SuiteResult verify_exact_cases(const VerifyOptions& opt) {
  detail::SuiteRecorder rec("exact");
  std::ostringstream log;
  auto note_spread = [&](const OracleEstimate& e, const std::string& what) {
    if (detail::spread_too_large(e, opt.spread_threshold)) rec.inconclusive(what);
  };
  for (std::size_t n = 1; n < 4; ++n) {
    const WidthQuery q(BallIntersection(4, {{Exponent::from_value(2.0), 1.0}}), n, Exponent::from_value(2.0));
    const OracleEstimate e = gelfand_estimate(q, opt.seed + n, opt.oracle);
    note_spread(e, "euclidean n=" + std::to_string(n));
    rec.check(std::abs(e.value - 1.0) <= 1e-3,
              [&] { return "B_2^4 in l_2, n=" + std::to_string(n) + ": " + format_real(e.value); });
    log << "B2^4 n=" << n << " " << format_real(e.value) << "; ";
  }
  {
    const WidthQuery q(BallIntersection(2, {{Exponent::from_value(2.0), 1.0}}), 1, Exponent::infinity());
    const OracleEstimate e = gelfand_estimate(q, opt.seed + 11, opt.oracle);
    note_spread(e, "B_2^2 in l_inf");
    rec.check(std::abs(e.value - std::sqrt(0.5)) <= 1e-3,
              [&] { return "d^1(B_2^2, l_inf^2): " + format_real(e.value); });
    const OracleEstimate k = kolmogorov_estimate(lp_norm_spec(2, Exponent::from_value(2.0)),
                                                 lp_norm_spec(2, Exponent::infinity()), 1, opt.seed + 12, opt.oracle);
    note_spread(k, "d_1(B_2^2, l_inf^2)");
    rec.check(std::abs(k.value - std::sqrt(0.5)) <= 1e-3,
              [&] { return "d_1(B_2^2, l_inf^2): " + format_real(k.value); });
    log << "l2->linf gelfand " << format_real(e.value) << " kolmogorov " << format_real(k.value) << "; ";
  }
  for (std::size_t n = 0; n <= 2; ++n) {
    const Exponent p = Exponent::from_value(4.0);
    const Exponent q = Exponent::from_value(2.0);
    const WidthQuery query(BallIntersection(5, {{p, 1.0}}), n, q);
    const double expected = std::pow(5.0 - static_cast<double>(n), q.reciprocal() - p.reciprocal());
    const OracleEstimate e = gelfand_estimate(query, opt.seed + 20 + n, opt.oracle);
    note_spread(e, "B_4^5 in l_2, n=" + std::to_string(n));
    rec.check(std::abs(e.value - expected) <= 0.10 * expected, [&] {
      return "B_4^5 in l_2, n=" + std::to_string(n) + ": " + format_real(e.value) + " vs " + format_real(expected);
    });
    log << "B4^5 n=" << n << " " << format_real(e.value) << " (" << format_real(expected) << ")"
        << (n < 2 ? "; " : "");
  }
  return rec.finish(log.str());
}

/// Certified lower bound <= oracle <= certified upper bound within the delta band
/// on random admissible instances, and lower <= upper with no slack.
inline SuiteResult verify_sandwich(const VerifyOptions& opt, std::size_t instances = 50) {
  detail::SuiteRecorder rec("sandwich");
  std::mt19937_64 rng(splitmix64(opt.seed ^ 0x5005));
  const std::vector<double> ps{1.0, 1.5, 2.0, 3.0, 4.0, std::numeric_limits<double>::infinity()};
  const Exponent qs[] = {Exponent::from_value(2.0), Exponent::from_value(4.0), Exponent::infinity()};
  std::size_t informative = 0;
  for (std::size_t k = 0; k < instances; ++k) {
    const std::size_t N = detail::uniform_index(rng, 2, 8);
    const std::size_t n = detail::uniform_index(rng, 0, N);
    const BallIntersection set = detail::random_family(rng, N, detail::uniform_index(rng, 1, 3), ps);
    const WidthQuery query(set, n, qs[k % 3]);
    const double lower = gluskin_lower_bound(query, opt.c).lower_bound;
    const double upper = inclusion_upper_bound(query);
    rec.check(lower <= upper, [&] {
      return detail::describe(query) + " lower=" + format_real(lower) + " > upper=" + format_real(upper);
    });
    if (lower > 0.0) ++informative;
    const OracleEstimate e = gelfand_estimate(query, opt.seed + 1000 + k, opt.oracle);
    const bool ok = lower <= e.value * (1.0 + opt.delta) && e.value <= upper * (1.0 + opt.delta);
    if (detail::spread_too_large(e, opt.spread_threshold)) {
      rec.inconclusive(detail::describe(query) + " spread=" + format_real(e.spread));
      if (!ok) continue;
    }
    rec.check(ok, [&] {
      return detail::describe(query) + " lower=" + format_real(lower) + " oracle=" + format_real(e.value) +
             " upper=" + format_real(upper);
    });
  }
  return rec.finish(std::to_string(instances) + " instances, " + std::to_string(informative) +
                    " with a positive lower bound");
}

namespace detail {

// Ascending exponents p_1 < ... < p_r with radius chains nu_1 >= ... >= nu_r and
// nu_j N^{-1/p_j} nondecreasing.
inline BallIntersection chained_family(std::mt19937_64& rng, std::size_t N, std::vector<Exponent> ps) {
  std::sort(ps.begin(), ps.end());
  std::vector<Ball> balls(ps.size());
  const double Nd = static_cast<double>(N);
  balls.back() = {ps.back(), log_uniform(rng, 0.5, 2.0)};
  for (std::size_t j = ps.size() - 1; j-- > 0;) {
    const double hi = std::pow(Nd, ps[j].reciprocal() - ps[j + 1].reciprocal());
    balls[j] = {ps[j], balls[j + 1].nu * std::exp(std::uniform_real_distribution<double>(0.0, std::log(hi))(rng))};
  }
  return BallIntersection(N, std::move(balls));
}

inline Exponent exponent_between(std::mt19937_64& rng, double lo_recip, double hi_recip) {
  return Exponent::from_reciprocal(std::uniform_real_distribution<double>(lo_recip, hi_recip)(rng));
}

}  // namespace detail

/// Agreement between the order formulas where their hypotheses overlap, against
/// brute-force pair minima, and under scaling of the radii.
inline SuiteResult verify_consistency(const VerifyOptions& opt) {
  detail::SuiteRecorder rec("consistency");
  std::mt19937_64 rng(splitmix64(opt.seed ^ 0x6006));
  FormulaOptions fo;
  fo.lambda = opt.lambda;
  fo.regime = opt.regime;

  // a single ball with 1 < p < 2 under THM1 against the single-ball formula
  for (int k = 0; k < 100; ++k) {
    const std::size_t N = detail::uniform_index(rng, 2, 4096);
    const std::size_t n = detail::uniform_index(rng, 0, N / 2);
    const Exponent p = detail::exponent_between(rng, 0.5 + 1e-6, 1.0 - 1e-6);
    const Exponent q = detail::uniform_index(rng, 0, 3) == 0 ? Exponent::infinity()
                                                             : detail::exponent_between(rng, 0.0, 0.5);
    const double nu = k < 50 ? 1.0 : detail::log_uniform(rng, 0.1, 10.0);
    const WidthQuery query(BallIntersection(N, {{p, nu}}), n, q);
    const double thm1 = theorem1_order(query, fo).order_value;
    const double single = nu * single_ball_order(N, n, q, p, fo.regime);
    rec.check(thm1 == single, [&] {
      return detail::describe(query) + " THM1 " + format_real(thm1) + " single ball " + format_real(single);
    });
  }

  // THM2 against an independent pair minimum
  auto pair_minimum = [](const WidthQuery& query) {
    const BallIntersection s = query.set().sorted();
    const double q = query.q().reciprocal();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = 0; j < s.size(); ++j) {
        const double a = s[i].p.reciprocal();
        const double b = s[j].p.reciprocal();
        if (!(a >= q && q >= b)) continue;
        if (a == b) {
          best = std::min(best, std::min(s[i].nu, s[j].nu));
          continue;
        }
        const double lam = (a - q) / (a - b);
        best = std::min(best, std::pow(s[i].nu, 1.0 - lam) * std::pow(s[j].nu, lam));
      }
    }
    return best;
  };
  std::vector<WidthQuery> second;
  while (second.size() < 100) {
    const std::size_t N = detail::uniform_index(rng, 8, 4096);
    const std::size_t r = detail::uniform_index(rng, 2, 4);
    const Exponent q = detail::exponent_between(rng, 0.05, 0.45);
    std::vector<Exponent> ps;
    ps.push_back(detail::exponent_between(rng, q.reciprocal() + 0.01, 0.5));
    ps.push_back(detail::uniform_index(rng, 0, 3) == 0 ? Exponent::infinity()
                                                       : detail::exponent_between(rng, 0.0, q.reciprocal() - 0.01));
    while (ps.size() < r) ps.push_back(detail::exponent_between(rng, 0.0, 0.5));
    const WidthQuery query(detail::chained_family(rng, N, ps), detail::uniform_index(rng, 0, N / 4), q);
    if (!check_theorem2(query, fo.regime).empty()) continue;
    second.push_back(query);
  }
  for (const WidthQuery& query : second) {
    const double formula = theorem2_order(query, fo).order_value;
    const double brute = pair_minimum(query);
    rec.check(formula == brute, [&] {
      return detail::describe(query) + " THM2 " + format_real(formula) + " pair minimum " + format_real(brute);
    });
    if (query.set().size() == 2) {
      const double part2 = theorem3_order(query, Theorem3Part::second, fo).order_value;
      rec.check(part2 == formula, [&] {
        return detail::describe(query) + " THM3_PART2 " + format_real(part2) + " THM2 " +
               format_real(formula);
      });
    }
  }
  for (int k = 0; k < 100; ++k) {
    const std::size_t N = detail::uniform_index(rng, 8, 4096);
    const Exponent q = detail::exponent_between(rng, 0.05, 0.45);
    const Exponent lo = detail::exponent_between(rng, q.reciprocal() + 0.01, 0.5);
    const Exponent hi = detail::exponent_between(rng, 0.0, q.reciprocal() - 0.01);
    const WidthQuery query(detail::chained_family(rng, N, {lo, hi}), detail::uniform_index(rng, 0, N / 4), q);
    if (!check_theorem2(query, fo.regime).empty()) continue;
    const double part2 = theorem3_order(query, Theorem3Part::second, fo).order_value;
    const double formula = theorem2_order(query, fo).order_value;
    rec.check(part2 == formula, [&] {
      return detail::describe(query) + " THM3_PART2 " + format_real(part2) + " THM2 " +
             format_real(formula);
    });
  }

  // scaling every radius by alpha scales every order value and both certified bounds by alpha
  const std::vector<double> ps{1.25, 1.5, 2.0, 3.0, 4.0, std::numeric_limits<double>::infinity()};
  for (int k = 0; k < 100; ++k) {
    const std::size_t N = detail::uniform_index(rng, 4, 256);
    const BallIntersection set = detail::random_family(rng, N, detail::uniform_index(rng, 1, 3), ps);
    const Exponent q = detail::uniform_index(rng, 0, 1) ? Exponent::from_value(2.0) : detail::exponent_between(rng, 0.0, 0.5);
    const WidthQuery query(set, detail::uniform_index(rng, 0, N / 4), q);
    const double alpha = detail::log_uniform(rng, 0.01, 100.0);
    const WidthQuery scaled = query.with_set(set.scaled(alpha));
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
    const OrderSummary base = all_orders(query, fo);
    const OrderSummary big = all_orders(scaled, fo);
    rec.check(base.reports.size() == big.reports.size(),
              [&] { return detail::describe(query) + " scaling changed which theorems apply"; });
    for (std::size_t i = 0; i < std::min(base.reports.size(), big.reports.size()); ++i) {
      const double a = big.reports[i].order_value;
      const double b = alpha * base.reports[i].order_value;
      rec.check(rel(a, b) <= 1e-12, [&] {
        return detail::describe(query) + " " + std::string(regime_name(base.reports[i].regime)) + " not scale equivariant";
      });
    }
    const double u = inclusion_upper_bound(scaled);
    rec.check(rel(u, alpha * inclusion_upper_bound(query)) <= 1e-12,
              [&] { return detail::describe(query) + " upper bound not scale equivariant"; });
    const double l = gluskin_lower_bound(scaled, opt.c).lower_bound;
    const double l0 = alpha * gluskin_lower_bound(query, opt.c).lower_bound;
    rec.check(std::abs(l - l0) <= 1e-12 * std::max(l0, alpha),
              [&] { return detail::describe(query) + " lower bound not scale equivariant"; });
  }
  return rec.finish("single-ball, pair-minimum, part-2 and scaling checks");
}

/// The symmetric-set lower bound fed with the spike vector, its supporting
/// functional and the embedding norm reproduces the spike bound.
inline SuiteResult verify_specialization(const VerifyOptions& opt) {
  detail::SuiteRecorder rec("specialization");
  std::mt19937_64 rng(splitmix64(opt.seed ^ 0x7007));
  const std::vector<double> ps{1.0, 1.5, 2.0, 3.0, 4.0, std::numeric_limits<double>::infinity()};
  const std::vector<double> qs{1.5, 2.0, 3.0, 4.0, std::numeric_limits<double>::infinity()};
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t N = detail::uniform_index(rng, 2, 64);
    const BallIntersection set = detail::random_family(rng, N, detail::uniform_index(rng, 1, 3), ps);
    const Exponent q = detail::pick_exponent(rng, qs);
    // mostly small n so that the bound is not clamped to zero
    const std::size_t n = k % 4 == 0 ? detail::uniform_index(rng, 0, N) : detail::uniform_index(rng, 0, 2);
    const WidthQuery query(set, n, q);
    const std::size_t s = detail::uniform_index(rng, 1, N);

    const Vector xhat = support_vector(s, q, N);
    const double xhat_norm = dual_norm(xhat, set);
    const double A = spike_dual_norm(s, q, set);
    rec.check(std::abs(xhat_norm - A) <= 1e-8 * A, [&] {
      return detail::describe(query) + " s=" + std::to_string(s) + " dual norm of spike " + format_real(xhat_norm) +
             " vs " + format_real(A);
    });
    const double b_l2 = supporting_functional_coeffs(s, q, set).norm();
    double embed = 0.0;
    for (const Ball& b : set.balls()) {
      embed = std::max(embed, std::pow(static_cast<double>(N), std::max(0.0, b.p.reciprocal() - 0.5)) / b.nu);
    }
    const double group = group_lower_bound(A, b_l2, embed, n, N, opt.c);
    const double spike = spike_lower_bound(query, s, embedding_norm(lp_norm_spec(N, Exponent::from_value(2.0)),
                                                                    IntersectionNorm{set}), opt.c)
                             .bound;
    const double err = std::abs(group - spike);
    worst = std::max(worst, err);
    rec.check(err <= 1e-9, [&] {
      return detail::describe(query) + " s=" + std::to_string(s) + " group " + format_real(group) + " spike " +
             format_real(spike);
    });
  }
  for (int k = 0; k < 100; ++k) {
    const double b = detail::log_uniform(rng, 0.01, 1.0);
    const double e = detail::log_uniform(rng, 0.01, 1.0);
    const std::size_t N = detail::uniform_index(rng, 1000, 100000000);
    const std::size_t base = corollary_threshold(b, e, N);
    const std::size_t quarter = corollary_threshold(2.0 * b, e, N);
    rec.check(quarter == base / 4, [&] {
      return "threshold(b=" + format_real(b) + ")=" + std::to_string(base) + " but threshold(2b)=" +
             std::to_string(quarter);
    });
    if (base >= 1 && base <= N) {
      const double at = group_lower_bound(1.0, b, e, base, N);
      rec.check(at >= 0.5 - 1e-12, [&] { return "bound at the threshold is " + format_real(at); });
    }
    if (base + 1 <= N) {
      const double past = group_lower_bound(1.0, b, e, base + 1, N);
      rec.check(past < 0.5 + 1e-12, [&] { return "bound past the threshold is " + format_real(past); });
    }
  }
  return rec.finish("max |group - spike| " + format_real(worst));
}

namespace detail {

struct CaseMembership {
  bool c1 = false, c2 = false, c3 = false, c4 = false, c5 = false;
  int count() const { return c1 + c2 + c3 + c4 + c5; }
};

// The five hypotheses written out independently of the dispatcher.
inline CaseMembership sobolev_cases(const ExactSobolevInstance& inst) {
  const Rational half(1, 2);
  const Rational q = inst.q.reciprocal();
  CaseMembership m;
  bool all_ge_q = true, all_le_q = true, all_ge_two = true, some_gt = false, some_lt = false;
  for (const auto& l : inst.layers) {
    const Rational p = l.p.reciprocal();
    all_ge_q = all_ge_q && p <= q;
    all_le_q = all_le_q && p >= q;
    all_ge_two = all_ge_two && p <= half;
    some_gt = some_gt || p < q;
    some_lt = some_lt || p > q;
  }
  m.c1 = all_ge_q;
  m.c2 = all_ge_two && all_le_q;
  m.c3 = q <= half && all_le_q && inst.layers.front().p.reciprocal() > half;
  m.c4 = q <= half && all_ge_two && some_gt && some_lt;
  if (q == half && inst.layers.size() == 2) {
    const Rational a = inst.layers[0].p.reciprocal();
    const Rational b = inst.layers[1].p.reciprocal();
    const Rational gap = Rational(inst.layers[0].r - inst.layers[1].r, inst.d);
    m.c5 = a > half && b < half && gap >= half - b;
  }
  return m;
}

inline std::string describe(const ExactSobolevInstance& inst) {
  std::string s = "d=" + std::to_string(inst.d) + " q=" + format_exponent(inst.q) + " layers=";
  for (const auto& l : inst.layers) s += "(" + std::to_string(l.r) + "," + format_exponent(l.p) + ")";
  return s;
}

}  // namespace detail

/// Worked instances, case dispatch on random valid instances, and the case-4 pair search.
inline SuiteResult verify_sobolev(const VerifyOptions& opt) {
  detail::SuiteRecorder rec("sobolev");
  auto exact = [](int d, const char* q, std::vector<std::pair<int, const char*>> layers) {
    ExactSobolevInstance inst;
    inst.d = d;
    inst.q = parse_exact_exponent(q);
    for (auto& [r, p] : layers) inst.layers.push_back({r, parse_exact_exponent(p)});
    return inst;
  };
  {
    const auto res = width_exponent(exact(3, "2", {{2, "10/9"}, {1, "2"}}));
    rec.check(res.theta == Rational(2, 3) && res.which == SobolevCase::large_gap,
              [&] { return "large-gap worked instance gave " + format_rational(res.theta); });
  }
  {
    const auto res = width_exponent(exact(4, "2", {{3, "3/2"}, {2, "4"}}));
    rec.check(res.theta == Rational(3, 4) && res.which == SobolevCase::two_layer_l2,
              [&] { return "two-layer worked instance gave " + format_rational(res.theta); });
  }

  std::mt19937_64 rng(splitmix64(opt.seed ^ 0x8008));
  const std::vector<Rational> recips{Rational(0), Rational(1, 8), Rational(1, 5), Rational(1, 4), Rational(1, 3),
                                     Rational(2, 5), Rational(1, 2), Rational(3, 5), Rational(2, 3), Rational(3, 4),
                                     Rational(4, 5), Rational(9, 10)};
  const std::vector<Rational> q_recips{Rational(1, 8), Rational(1, 5), Rational(1, 4), Rational(1, 3),
                                       Rational(2, 5), Rational(1, 2), Rational(2, 3), Rational(4, 5)};
  std::size_t valid = 0, ties = 0, no_case = 0, case4 = 0;
  std::size_t tally[6] = {0, 0, 0, 0, 0, 0};
  std::size_t attempts = 0;
  while (valid < opt.sobolev_samples && attempts < 100 * opt.sobolev_samples + 1000) {
    ++attempts;
    ExactSobolevInstance inst;
    inst.d = static_cast<int>(detail::uniform_index(rng, 1, 4));
    inst.q = ExactExponent::from_reciprocal(q_recips[detail::uniform_index(rng, 0, q_recips.size() - 1)]);
    const std::size_t s = detail::uniform_index(rng, 2, 3);
    int r = static_cast<int>(detail::uniform_index(rng, s - 1, 8));
    for (std::size_t j = 0; j < s; ++j) {
      inst.layers.push_back({r, ExactExponent::from_reciprocal(recips[detail::uniform_index(rng, 0, recips.size() - 1)])});
      r -= static_cast<int>(detail::uniform_index(rng, 1, 3));
      if (r < 0) r = 0;
    }
    if (!validate(inst).empty()) continue;
    ++valid;
    const detail::CaseMembership m = detail::sobolev_cases(inst);
    rec.check(m.count() <= 1, [&] { return detail::describe(inst) + " satisfies several case hypotheses"; });
    try {
      const auto res = width_exponent(inst);
      ++tally[static_cast<int>(res.which)];
      const bool agrees = (res.which == SobolevCase::all_above_q && m.c1) ||
                          (res.which == SobolevCase::all_between_two_and_q && m.c2) ||
                          ((res.which == SobolevCase::small_gap || res.which == SobolevCase::large_gap) && m.c3) ||
                          (res.which == SobolevCase::straddling_q && m.c4) ||
                          (res.which == SobolevCase::two_layer_l2 && m.c5);
      rec.check(agrees && res.theta > Rational(0), [&] {
        return detail::describe(inst) + " dispatched to case " + case_tag(res.which) + " theta " +
               format_rational(res.theta);
      });
      if (res.which == SobolevCase::straddling_q) {
        ++case4;
        Rational best(-1);
        for (const auto& a : inst.layers) {
          for (const auto& b : inst.layers) {
            if (!(a.p < inst.q && b.p > inst.q)) continue;
            const Rational lam = (a.p.reciprocal() - inst.q.reciprocal()) / (a.p.reciprocal() - b.p.reciprocal());
            best = std::max(best, ((Rational(1) - lam) * a.r + lam * b.r) / inst.d);
          }
        }
        rec.check(best == res.theta, [&] {
          return detail::describe(inst) + " pair maximum " + format_rational(best) + " vs " + format_rational(res.theta);
        });
      }
    } catch (const regime_error& e) {
      const bool tie = std::string(e.what()).find("theta1 = theta2") != std::string::npos;
      if (tie) {
        ++ties;
        rec.check(m.c3 || m.c5, [&] { return detail::describe(inst) + " tie reported outside cases 3 and 5"; });
      } else {
        ++no_case;
        rec.check(m.count() == 0, [&] { return detail::describe(inst) + " rejected although a case applies"; });
      }
    }
  }
  rec.check(valid == opt.sobolev_samples, [&] { return "only " + std::to_string(valid) + " valid instances drawn"; });
  std::ostringstream s;
  s << valid << " valid instances: cases 1/2/3a/3b/4/5 = " << tally[0] << "/" << tally[1] << "/" << tally[2] << "/"
    << tally[3] << "/" << tally[4] << "/" << tally[5] << ", ties " << ties << ", outside all cases " << no_case;
  return rec.finish(s.str());
}

/// Every suite, in a fixed order.
inline std::vector<SuiteResult> run_all_suites(const VerifyOptions& opt) {
  std::vector<SuiteResult> out;
  out.push_back(verify_norm_inequality(opt));
  out.push_back(verify_quadratic(opt));
  out.push_back(verify_duality(opt));
  out.push_back(verify_exact_cases(opt));
  out.push_back(verify_sandwich(opt));
  out.push_back(verify_consistency(opt));
  out.push_back(verify_specialization(opt));
  out.push_back(verify_sobolev(opt));
  return out;
}

}  // namespace widthlab
