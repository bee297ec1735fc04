#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "widthlab/ball_model.hpp"
#include "widthlab/dual_norm.hpp"
#include "widthlab/errors.hpp"
#include "widthlab/lp_norm.hpp"
#include "widthlab/nelder_mead.hpp"
#include "widthlab/norms.hpp"
#include "widthlab/section_support.hpp"
#include "widthlab/subspace_search.hpp"

namespace widthlab {

struct OracleOptions {
  std::size_t restarts = 32;
  std::size_t inner_starts = 64;          // ascent starts for the final evaluation of each restart
  std::size_t search_starts = 0;          // ascent starts while the simplex search runs
  std::size_t start_candidates = 16;      // random subspaces screened for each restart's start
  std::size_t rounds = 3;                 // simplex runs per restart, each re-centred with half the step
  std::size_t evaluations_per_round = 100;
  double initial_step = 0.5;
  std::size_t ascent_iterations = 10;
  double ascent_tolerance = 1e-6;  // relative improvement below which an ascent stops
  double section_gap = 1e-9;         // relative gap of section solves in final evaluations
  double search_section_gap = 1e-6;  // and while the simplex search runs
  std::size_t max_dim = 16;
  bool allow_large = false;
  std::size_t threads = 0;  // 0: WIDTHLAB_THREADS, else the hardware concurrency
};

/// A numerical width estimate. Not a certificate: the subspace search can only
/// overestimate the infimum, while the inner maximization can underestimate.
struct OracleEstimate {
  double value = 0.0;
  std::size_t restarts_used = 0;
  bool inner_max_exact = false;
  double spread = 0.0;  // max - min over restart results
  std::vector<double> restart_values;
  SubspaceBasis best_subspace;
};

/// Number of worker threads: explicit request, else WIDTHLAB_THREADS, else hardware.
inline std::size_t worker_count(std::size_t requested, std::size_t jobs) {
  std::size_t t = requested;
  if (t == 0) {
    if (const char* env = std::getenv("WIDTHLAB_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v > 0) t = static_cast<std::size_t>(v);
    }
  }
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(t, jobs));
}

/// Runs job(i) for i in [0, count) on a small pool; job results must be stored by index.
inline void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& job) {
  const std::size_t workers = worker_count(threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          job(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace detail {

/// sup over y in K cap span(W) of the support function of the source ball,
/// maximized by alternating between the section problem and the source's
/// maximizing point (a conditional-gradient ascent on a convex function).
class SectionMaximizer {
 public:
  SectionMaximizer(const NormSpec& source, BallIntersection K, double section_gap, double search_gap,
                   double tolerance)
      : source_(source), K_(canonicalize(K)), gap_(section_gap), search_gap_(search_gap), tol_(tolerance) {
    if (const auto* lp = std::get_if<LpNorm>(&source_)) {
      exact_ = lp->p.is_one();
    } else if (!std::holds_alternative<IntersectionNorm>(source_)) {
      throw unsupported_pair_error("oracle: the source ball must be an l_p ball or an intersection of l_p balls");
    }
  }

  bool exact() const { return exact_; }

  /// sup over x in the source ball of <x, y>, and a point attaining it.
  double support(const Vector& y, Vector* argmax) const {
    if (const auto* lp = std::get_if<LpNorm>(&source_)) {
      if (argmax) *argmax = lp->scale * lp_supporting_functional(y, lp->p.dual());
      return lp->scale * lp_norm(y, lp->p.dual());
    }
    const auto& set = std::get<IntersectionNorm>(source_).set;
    const DualNormResult d = dual_norm_detailed(y, set);
    if (argmax) *argmax = d.witness;
    return d.value;
  }

  double evaluate(const Matrix& W, std::uint64_t seed, std::size_t starts, std::size_t iterations,
                  const std::vector<Vector>& seeds, Vector* warm, bool coarse = false) const {
    const Eigen::Index N = W.rows();
    const double gap = coarse ? search_gap_ : gap_;
    if (W.cols() == 0) return 0.0;
    if (exact_) {
      const double scale = std::get<LpNorm>(source_).scale;
      double best = 0.0;
      for (Eigen::Index i = 0; i < N; ++i) {
        const Vector e = Vector::Unit(N, i);
        best = std::max(best, section_support(W, e, K_, gap).value);
      }
      return scale * best;
    }
    std::vector<Vector> dirs = seeds;
    if (warm && warm->size() == N) dirs.push_back(*warm);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (std::size_t s = 0; s < starts; ++s) {
      Vector x(N);
      for (Eigen::Index i = 0; i < N; ++i) x[i] = gauss(rng);
      dirs.push_back(std::move(x));
    }
    double best = 0.0;
    Vector best_dir;
    for (Vector x : dirs) {
      double prev = -1.0;
      for (std::size_t it = 0; it < iterations; ++it) {
        const Vector y = section_support(W, x, K_, gap).y;
        Vector next;
        const double val = support(y, &next);
        if (val > best) {
          best = val;
          best_dir = x;
        }
        if (val <= prev * (1.0 + tol_)) break;
        prev = val;
        x = std::move(next);
      }
    }
    if (warm && best_dir.size() == N) *warm = best_dir;
    return best;
  }

 private:
  NormSpec source_;
  BallIntersection K_;
  double gap_;
  double search_gap_;
  double tol_;
  bool exact_ = false;
};

inline BallIntersection target_dual_ball(const NormSpec& target) {
  if (const auto* lp = std::get_if<LpNorm>(&target)) {
    return BallIntersection(lp->dim, {Ball{lp->p.dual(), 1.0 / lp->scale}});
  }
  if (const auto* d = std::get_if<DualIntersectionNorm>(&target)) return d->set;
  throw unsupported_pair_error("oracle: the target norm must be an l_p norm or a dual intersection norm");
}

inline void check_desk_scale(std::size_t N, const OracleOptions& opt) {
  if (!opt.allow_large && N > opt.max_dim) {
    throw desk_scale_error("oracle: N = " + std::to_string(N) + " exceeds the desk-scale limit " +
                           std::to_string(opt.max_dim));
  }
}

inline std::vector<Vector> flat_vectors(std::size_t N) {
  std::vector<Vector> out;
  for (std::size_t s = 1; s <= N; ++s) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(N));
    v.head(static_cast<Eigen::Index>(s)).setOnes();
    out.push_back(std::move(v));
  }
  return out;
}

/// Objective on subspaces: evaluate(L, seed, starts, warm, coarse) -> value.
/// coarse is set while the simplex search runs and cleared for final evaluations.
using SubspaceObjective =
    std::function<double(const SubspaceBasis&, std::uint64_t, std::size_t, Vector*, bool)>;

/// Minimizes a subspace objective with restarted simplex searches on Grassmann charts.
inline OracleEstimate search_subspaces(std::size_t N, std::size_t n, std::uint64_t seed, const OracleOptions& opt,
                                       const SubspaceObjective& objective) {
  const std::size_t restarts = std::max<std::size_t>(1, opt.restarts);
  std::vector<double> values(restarts);
  std::vector<SubspaceBasis> bests(restarts);

  parallel_for(restarts, opt.threads, [&](std::size_t r) {
    const std::uint64_t rs = splitmix64(seed ^ splitmix64(r + 1));
    std::mt19937_64 rng(rs);
    const SubspaceBasis coordinates = coordinate_subspace(N, n);
    SubspaceBasis start = coordinates;
    Vector warm;
    double best = r == 0 ? objective(start, rs + 1, opt.search_starts, &warm, true)
                         : std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < std::max<std::size_t>(1, opt.start_candidates); ++k) {
      SubspaceBasis cand = random_subspace(N, n, rng);
      Vector w;
      const double v = objective(cand, rs + 1, opt.search_starts, &w, true);
      if (v < best) {
        best = v;
        start = std::move(cand);
        warm = std::move(w);
      }
    }
    SubspaceBasis best_l = start;
    double step = opt.initial_step;
    for (std::size_t round = 0; round < opt.rounds; ++round) {
      const GrassmannChart chart(best_l);
      const Vector frozen = warm;
      const std::uint64_t round_seed = rs + 101 + round;
      auto f = [&](const Vector& c) {
        Vector w = frozen;
        return objective(chart.at(c), round_seed, opt.search_starts, &w, true);
      };
      NelderMeadOptions nm;
      nm.step = step;
      nm.max_evaluations = opt.evaluations_per_round;
      nm.value_tolerance = 1e-10 * std::max(best, 1e-300);
      const NelderMeadResult res = nelder_mead(f, Vector::Zero(static_cast<Eigen::Index>(chart.coordinate_count())), nm);
      if (res.value < best) {
        best = res.value;
        best_l = chart.at(res.x);
        objective(best_l, round_seed, opt.search_starts, &warm, true);
      }
      step *= 0.5;
    }
    double final_value = objective(best_l, rs + 7, opt.inner_starts, &warm, false);
    if (r == 0) {
      Vector w0 = warm;
      const double at_coordinates = objective(coordinates, rs + 7, opt.inner_starts, &w0, false);
      if (at_coordinates < final_value) {
        final_value = at_coordinates;
        best_l = coordinates;
      }
    }
    values[r] = final_value;
    bests[r] = best_l;
  });

  OracleEstimate est;
  est.restart_values = values;
  est.restarts_used = restarts;
  const auto lo = std::min_element(values.begin(), values.end());
  est.value = *lo;
  est.spread = *std::max_element(values.begin(), values.end()) - *lo;
  est.best_subspace = bests[static_cast<std::size_t>(lo - values.begin())];
  return est;
}

}  // namespace detail

/// sup over y in K of the source support function, K the dual ball of the target.
/// Shared by the n = 0 case of every estimator so they agree exactly there.
inline double radius_estimate(const NormSpec& source, const BallIntersection& K, std::uint64_t seed,
                              const OracleOptions& opt = {}) {
  const detail::SectionMaximizer inner(source, K, opt.section_gap, opt.search_section_gap, opt.ascent_tolerance);
  const std::size_t N = K.dim();
  const Matrix id = Matrix::Identity(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  return inner.evaluate(id, splitmix64(seed), opt.inner_starts, 2 * opt.ascent_iterations, detail::flat_vectors(N),
                        nullptr);
}

/// Estimates d_n(B_source, target) = inf_L sup_{x in B_source} dist_target(x, L).
///
/// The distance is evaluated through its dual form sup{<x, y> : y in B_{target*}, y perp L},
/// so the middle supremum becomes a maximization over the section of the dual
/// ball; it is exact for an l_1 source ball and a multi-start ascent otherwise.
inline OracleEstimate kolmogorov_estimate(const NormSpec& source, const NormSpec& target, std::size_t n,
                                          std::uint64_t seed, const OracleOptions& opt = {}) {
  const std::size_t N = dimension(source);
  if (dimension(target) != N) throw domain_error("oracle: source and target dimensions differ");
  if (n > N) throw domain_error("oracle: n must satisfy n <= N");
  detail::check_desk_scale(N, opt);
  const BallIntersection K = detail::target_dual_ball(target);
  const detail::SectionMaximizer inner(source, K, opt.section_gap, opt.search_section_gap, opt.ascent_tolerance);

  OracleEstimate est;
  est.inner_max_exact = inner.exact();
  if (n == N) {
    est.inner_max_exact = true;
    est.best_subspace = coordinate_subspace(N, N);
    est.restart_values = {0.0};
    est.restarts_used = 1;
    return est;
  }
  if (n == 0) {
    est.value = radius_estimate(source, K, seed, opt);
    est.best_subspace = coordinate_subspace(N, 0);
    est.restart_values = {est.value};
    est.restarts_used = 1;
    return est;
  }
  const std::size_t iters = opt.ascent_iterations;
  std::vector<Vector> units;
  for (std::size_t i = 0; i < N; ++i) units.push_back(Vector::Unit(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(i)));
  auto objective = [&](const SubspaceBasis& L, std::uint64_t s, std::size_t starts, Vector* warm, bool coarse) {
    return inner.evaluate(L.complement, s, starts, iters, units, warm, coarse);
  };
  OracleEstimate found = detail::search_subspaces(N, n, seed, opt, objective);
  found.inner_max_exact = inner.exact();
  return found;
}

/// Estimates d^n(set, l_q^N) through d_n(B_{q'}^N, X*), X the intersection norm.
inline OracleEstimate gelfand_estimate(const WidthQuery& query, std::uint64_t seed, const OracleOptions& opt = {}) {
  const std::size_t N = query.dim();
  return kolmogorov_estimate(lp_norm_spec(N, query.q().dual()), DualIntersectionNorm{query.set()}, query.n(), seed,
                             opt);
}

/// Estimates d^n(set, l_q^N) directly: infimum over codimension-n subspaces M of
/// sup ||x||_q / ||x||_X over x in M, the inner sup by multi-start simplex search.
inline OracleEstimate primal_gelfand_estimate(const WidthQuery& query, std::uint64_t seed,
                                              const OracleOptions& opt = {}) {
  const std::size_t N = query.dim();
  const std::size_t n = query.n();
  detail::check_desk_scale(N, opt);
  const BallIntersection& set = query.set();
  const Exponent q = query.q();

  OracleEstimate est;
  if (n == N) {
    est.inner_max_exact = true;
    est.best_subspace = coordinate_subspace(N, N);
    est.restart_values = {0.0};
    est.restarts_used = 1;
    return est;
  }
  if (n == 0) {
    est.value = radius_estimate(lp_norm_spec(N, q.dual()), set, seed, opt);
    est.best_subspace = coordinate_subspace(N, 0);
    est.restart_values = {est.value};
    est.restarts_used = 1;
    return est;
  }

  auto ratio = [&](const Matrix& W, const Vector& w) {
    const Vector x = W * w;
    const double den = intersection_norm(x, set);
    return den > 0.0 ? lp_norm(x, q) / den : 0.0;
  };
  auto objective = [&](const SubspaceBasis& L, std::uint64_t s, std::size_t starts, Vector* warm, bool) {
    const Matrix& W = L.complement;
    const Eigen::Index m = W.cols();
    if (m == 1) return ratio(W, Vector::Ones(1));
    std::vector<Vector> dirs;
    if (warm && warm->size() == m) dirs.push_back(*warm);
    for (Eigen::Index i = 0; i < m; ++i) dirs.push_back(Vector::Unit(m, i));
    std::mt19937_64 rng(s);
    std::normal_distribution<double> gauss;
    for (std::size_t k = 0; k < starts; ++k) {
      Vector w(m);
      for (Eigen::Index i = 0; i < m; ++i) w[i] = gauss(rng);
      dirs.push_back(w / w.norm());
    }
    double best = 0.0;
    Vector best_w;
    NelderMeadOptions nm;
    nm.step = 0.25;
    nm.max_evaluations = 60 * static_cast<std::size_t>(m);
    nm.value_tolerance = 1e-12;
    for (const Vector& d : dirs) {
      const NelderMeadResult r = nelder_mead([&](const Vector& w) { return -ratio(W, w); }, d, nm);
      if (-r.value > best) {
        best = -r.value;
        best_w = r.x / std::max(r.x.norm(), 1e-300);
      }
    }
    if (warm && best_w.size() == m) *warm = best_w;
    return best;
  };
  OracleEstimate found = detail::search_subspaces(N, n, seed, opt, objective);
  found.inner_max_exact = N - n == 1;
  return found;
}

struct DualityCheck {
  OracleEstimate primal;  // direct Gelfand estimate
  OracleEstimate dual;    // Kolmogorov estimate of the dual problem
  double gap = 0.0;
};

inline DualityCheck duality_gap(const WidthQuery& query, std::uint64_t seed, const OracleOptions& opt = {}) {
  DualityCheck out;
  out.primal = primal_gelfand_estimate(query, seed, opt);
  out.dual = gelfand_estimate(query, seed, opt);
  out.gap = std::abs(out.primal.value - out.dual.value);
  return out;
}

}  // namespace widthlab
