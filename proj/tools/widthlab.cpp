#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "widthlab/widthlab.hpp"

namespace {

using namespace widthlab;

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

struct Config {
  std::string instance_path;
  std::string inline_json;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::optional<double> a0;
  double delta = 0.05;
  std::size_t restarts = 0;  // 0: command default
  std::string out_path;
};

void add_common(CLI::App* cmd, Config& cfg, bool needs_instance) {
  auto* path = cmd->add_option("--instance", cfg.instance_path, "instance file (JSON)");
  auto* inl = cmd->add_option("--inline", cfg.inline_json, "instance given inline as JSON");
  if (needs_instance) {
    path->excludes(inl);
    inl->excludes(path);
  }
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--a0", cfg.a0, "absolute constant in the n-range conditions")->check(CLI::PositiveNumber);
  cmd->add_option("--delta", cfg.delta, "tolerance band for oracle comparisons")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--restarts", cfg.restarts, "oracle restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--out", cfg.out_path, "write the output here instead of stdout");
}

std::string instance_text(const Config& cfg) {
  if (!cfg.inline_json.empty()) return cfg.inline_json;
  if (!cfg.instance_path.empty()) return read_file(cfg.instance_path);
  throw parse_error("an instance is required: pass --instance PATH or --inline JSON");
}

RegimeOptions regime_options(const Config& cfg) {
  RegimeOptions r;
  if (cfg.a0) r.a0 = *cfg.a0;
  return r;
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw parse_error("cannot write '" + cfg.out_path + "'");
  out << text;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

const char* const sweep_columns =
    "N,n,nu_ratio,regimes,order_value,order_theorem,certified_lower,certified_upper,oracle_estimate,regime_switch";

struct SweepRow {
  std::size_t N = 0;
  std::size_t n = 0;
  std::optional<double> nu_ratio;
  std::string regimes;
  std::optional<double> order_value;
  std::string order_theorem;
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> oracle;
  bool regime_switch = false;
};

SweepRow evaluate_row(const WidthQuery& query, std::optional<double> ratio, const FormulaOptions& fo,
                      const std::optional<OracleOptions>& oracle, std::uint64_t seed) {
  SweepRow row;
  row.N = query.dim();
  row.n = query.n();
  row.nu_ratio = ratio;
  row.regimes = classify_regimes(query, fo.regime).joined('|');
  const OrderSummary summary = all_orders(query, fo);
  if (!summary.reports.empty()) {
    row.order_value = summary.reports.front().order_value;
    row.order_theorem = regime_name(summary.reports.front().regime);
  }
  row.lower = query.kind() == WidthKind::kolmogorov ? 0.0 : gluskin_lower_bound(query).lower_bound;
  row.upper = inclusion_upper_bound(query);
  if (oracle) {
    if (query.kind() == WidthKind::kolmogorov) {
      row.oracle = kolmogorov_estimate(IntersectionNorm{query.set()}, lp_norm_spec(query.dim(), query.q()), query.n(),
                                       seed, *oracle)
                       .value;
    } else {
      row.oracle = gelfand_estimate(query, seed, *oracle).value;
    }
  }
  return row;
}

std::string row_csv(const SweepRow& r) {
  std::ostringstream s;
  s << r.N << ',' << r.n << ',' << (r.nu_ratio ? format_real(*r.nu_ratio) : "") << ',' << csv_escape(r.regimes) << ','
    << (r.order_value ? format_real(*r.order_value) : "") << ',' << r.order_theorem << ',' << format_real(r.lower)
    << ',' << format_real(r.upper) << ',' << (r.oracle ? format_real(*r.oracle) : "") << ','
    << (r.regime_switch ? 1 : 0) << '\n';
  return s.str();
}

Json row_json(const SweepRow& r) {
  Json j;
  j["N"] = r.N;
  j["n"] = r.n;
  j["nu_ratio"] = r.nu_ratio ? json_real(*r.nu_ratio) : Json(nullptr);
  j["regimes"] = r.regimes;
  j["order_value"] = r.order_value ? json_real(*r.order_value) : Json(nullptr);
  j["order_theorem"] = r.order_theorem;
  j["certified_lower"] = json_real(r.lower);
  j["certified_upper"] = json_real(r.upper);
  j["oracle_estimate"] = r.oracle ? json_real(*r.oracle) : Json(nullptr);
  j["regime_switch"] = r.regime_switch;
  return j;
}

OracleOptions oracle_options(const Config& cfg, std::size_t default_restarts) {
  OracleOptions o;
  o.restarts = cfg.restarts ? cfg.restarts : default_restarts;
  return o;
}

int cmd_bounds(const Config& cfg) {
  const WidthQuery query = parse_instance(instance_text(cfg));
  FormulaOptions fo;
  fo.regime = regime_options(cfg);
  const OrderSummary summary = all_orders(query, fo);
  const double upper = inclusion_upper_bound(query);
  std::optional<GluskinCertificate> cert;
  if (query.kind() != WidthKind::kolmogorov) cert = gluskin_lower_bound(query);

  if (cfg.format == "csv") {
    SweepRow row;
    row.N = query.dim();
    row.n = query.n();
    row.regimes = classify_regimes(query, fo.regime).joined('|');
    if (!summary.reports.empty()) {
      row.order_value = summary.reports.front().order_value;
      row.order_theorem = regime_name(summary.reports.front().regime);
    }
    row.lower = cert ? cert->lower_bound : 0.0;
    row.upper = upper;
    emit(cfg, std::string(sweep_columns) + "\n" + row_csv(row));
    return exit_ok;
  }
  Json doc;
  doc["instance"] = to_json(query);
  doc["regimes"] = classify_regimes(query, fo.regime).names();
  Json reports = Json::array();
  for (const BoundReport& r : summary.reports) reports.push_back(to_json(r));
  doc["reports"] = reports;
  Json na = Json::array();
  for (const auto& [name, why] : summary.not_applicable) na.push_back({{"theorem", name}, {"reason", why}});
  doc["not_applicable"] = na;
  doc["certified_lower"] = cert ? json_real(cert->lower_bound) : Json(nullptr);
  doc["certificate"] = cert ? to_json(*cert) : Json(nullptr);
  doc["certified_upper"] = json_real(upper);
  emit(cfg, dump_document(doc));
  return exit_ok;
}

int cmd_estimate(const Config& cfg, bool with_primal, bool allow_large) {
  const WidthQuery query = parse_instance(instance_text(cfg));
  OracleOptions o = oracle_options(cfg, OracleOptions{}.restarts);
  o.allow_large = allow_large;
  Json doc;
  doc["instance"] = to_json(query);
  doc["seed"] = cfg.seed;
  OracleEstimate est;
  switch (query.kind()) {
    case WidthKind::gelfand:
      est = gelfand_estimate(query, cfg.seed, o);
      break;
    case WidthKind::kolmogorov:
      est = kolmogorov_estimate(IntersectionNorm{query.set()}, lp_norm_spec(query.dim(), query.q()), query.n(),
                                cfg.seed, o);
      break;
    case WidthKind::linear:
      throw unsupported_pair_error("estimate: the oracle does not estimate linear widths");
  }
  doc["estimate"] = to_json(est);
  doc["inconclusive"] = est.spread > 0.05 * std::max(est.value, 1e-12);
  if (with_primal && query.kind() == WidthKind::gelfand) {
    const OracleEstimate primal = primal_gelfand_estimate(query, cfg.seed, o);
    doc["primal_estimate"] = to_json(primal);
    doc["duality_gap"] = json_real(std::abs(primal.value - est.value));
  }
  doc["certified_lower"] = query.kind() == WidthKind::kolmogorov ? Json(nullptr)
                                                                 : json_real(gluskin_lower_bound(query).lower_bound);
  doc["certified_upper"] = json_real(inclusion_upper_bound(query));
  if (cfg.format == "csv") {
    std::ostringstream s;
    s << "N,n,q,kind,estimate,spread,restarts\n"
      << query.dim() << ',' << query.n() << ',' << format_exponent(query.q()) << ',' << to_string(query.kind()) << ','
      << format_real(est.value) << ',' << format_real(est.spread) << ',' << est.restarts_used << '\n';
    emit(cfg, s.str());
  } else {
    emit(cfg, dump_document(doc));
  }
  return exit_ok;
}

struct SweepSpec {
  std::string n_range;
  std::vector<std::size_t> dims;
  std::vector<double> ratios;
  bool oracle = false;
};

std::pair<long long, long long> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw parse_error("--n-range: expected FROM:TO, got '" + text + "'");
  try {
    return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw parse_error("--n-range: expected integers FROM:TO, got '" + text + "'");
  }
}

int cmd_sweep(const Config& cfg, const SweepSpec& spec) {
  const WidthQuery base = parse_instance(instance_text(cfg));
  FormulaOptions fo;
  fo.regime = regime_options(cfg);
  std::optional<OracleOptions> oracle;
  if (spec.oracle) oracle = oracle_options(cfg, verification_oracle_options().restarts);

  std::vector<std::size_t> dims = spec.dims.empty() ? std::vector<std::size_t>{base.dim()} : spec.dims;
  std::sort(dims.begin(), dims.end());
  std::vector<std::optional<double>> ratios;
  if (spec.ratios.empty()) {
    ratios.push_back(std::nullopt);
  } else {
    if (base.set().size() < 2) throw parse_error("--nu-ratios: the instance needs at least two balls");
    std::vector<double> r = spec.ratios;
    std::sort(r.begin(), r.end());
    for (double v : r) {
      if (!(v > 0.0)) throw parse_error("--nu-ratios: ratios must be positive");
      ratios.emplace_back(v);
    }
  }

  std::vector<SweepRow> rows;
  std::uint64_t row_seed = cfg.seed;
  for (std::size_t N : dims) {
    if (N == 0) throw parse_error("--dims: dimensions must be positive");
    long long lo = 0;
    long long hi = static_cast<long long>(N / 2);
    if (!spec.n_range.empty()) std::tie(lo, hi) = parse_range(spec.n_range);
    lo = std::max(lo, 0LL);
    hi = std::min(hi, static_cast<long long>(N));
    std::optional<std::string> previous;
    // n innermost for an n sweep; the ratio innermost when ratios are given
    for (long long n = lo; n <= hi; ++n) {
      for (const auto& ratio : ratios) {
        std::vector<Ball> balls = base.set().balls();
        if (ratio) balls[0].nu = *ratio * balls[1].nu;
        const WidthQuery query(BallIntersection(N, balls), static_cast<std::size_t>(n), base.q(), base.kind());
        SweepRow row = evaluate_row(query, ratio, fo, oracle, row_seed++);
        row.regime_switch = previous && *previous != row.regimes;
        previous = row.regimes;
        rows.push_back(std::move(row));
      }
      if (ratios.size() > 1) previous.reset();
    }
  }

  if (cfg.format == "csv") {
    std::string out = std::string(sweep_columns) + "\n";
    for (const SweepRow& r : rows) out += row_csv(r);
    emit(cfg, out);
  } else {
    Json arr = Json::array();
    for (const SweepRow& r : rows) arr.push_back(row_json(r));
    Json doc;
    doc["instance"] = to_json(base);
    doc["columns"] = Json::array();
    std::istringstream cols(sweep_columns);
    for (std::string c; std::getline(cols, c, ',');) doc["columns"].push_back(c);
    doc["rows"] = arr;
    emit(cfg, dump_document(doc));
  }
  return exit_ok;
}

int cmd_sobolev(const Config& cfg) {
  const ExactSobolevInstance inst = parse_sobolev_instance(instance_text(cfg));
  Json doc;
  Json layers = Json::array();
  for (const auto& l : inst.layers) layers.push_back({{"r", l.r}, {"p", format_exponent(l.p)}});
  doc["instance"] = {{"d", inst.d}, {"q", format_exponent(inst.q)}, {"layers", layers}};
  const auto violations = validate(inst);
  doc["violations"] = violations;
  if (!violations.empty()) {
    emit(cfg, dump_document(doc));
    std::cerr << "widthlab: invalid instance\n";
    for (const auto& v : violations) std::cerr << "  " << v << "\n";
    return exit_usage;
  }
  try {
    doc["result"] = to_json(width_exponent(inst));
  } catch (const regime_error& e) {
    doc["result"] = nullptr;
    doc["error"] = e.what();
    emit(cfg, dump_document(doc));
    std::cerr << "widthlab: " << e.what() << "\n";
    return exit_usage;
  }
  if (cfg.format == "csv") {
    const auto res = width_exponent(inst);
    emit(cfg, "case,theta,theta_value\n" + case_tag(res.which) + "," + format_rational(res.theta) + "," +
                  format_real(to_double(res.theta)) + "\n");
  } else {
    emit(cfg, dump_document(doc));
  }
  return exit_ok;
}

struct VerifySpec {
  std::optional<double> c;
  bool swap_lambda = false;
  std::vector<std::string> suites;
};

int cmd_verify(const Config& cfg, const VerifySpec& spec) {
  VerifyOptions opt;
  opt.seed = cfg.seed;
  opt.delta = cfg.delta;
  opt.regime = regime_options(cfg);
  if (cfg.restarts) opt.oracle.restarts = cfg.restarts;
  if (spec.c) opt.c = *spec.c;
  if (spec.swap_lambda) opt.lambda = swapped_lambda;

  using Runner = SuiteResult (*)(const VerifyOptions&);
  const std::vector<std::pair<std::string, Runner>> all{
      {"norm_inequality", verify_norm_inequality},
      {"quadratic", verify_quadratic},
      {"duality", verify_duality},
      {"exact", verify_exact_cases},
      {"sandwich", [](const VerifyOptions& o) { return verify_sandwich(o); }},
      {"consistency", verify_consistency},
      {"specialization", verify_specialization},
      {"sobolev", verify_sobolev},
  };
  std::vector<SuiteResult> results;
  for (const auto& [name, run] : all) {
    if (!spec.suites.empty() && std::find(spec.suites.begin(), spec.suites.end(), name) == spec.suites.end()) continue;
    results.push_back(run(opt));
  }
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed;

  if (cfg.format == "csv") {
    std::string out = "suite,passed,checks,failures,inconclusive,detail\n";
    for (const auto& r : results) {
      out += r.name + "," + (r.passed ? "1" : "0") + "," + std::to_string(r.checks) + "," +
             std::to_string(r.failures) + "," + std::to_string(r.inconclusive) + "," + csv_escape(r.detail) + "\n";
    }
    emit(cfg, out);
  } else {
    Json arr = Json::array();
    for (const auto& r : results) {
      arr.push_back({{"suite", r.name},
                     {"passed", r.passed},
                     {"checks", r.checks},
                     {"failures", r.failures},
                     {"inconclusive", r.inconclusive},
                     {"detail", r.detail},
                     {"counterexamples", r.counterexamples}});
    }
    Json doc;
    doc["seed"] = cfg.seed;
    doc["c"] = json_real(opt.c);
    doc["passed"] = ok;
    doc["suites"] = arr;
    emit(cfg, dump_document(doc));
  }
  return ok ? exit_ok : exit_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds, estimates and verification for widths of intersections of l_p balls"};
  app.require_subcommand(1);

  Config cfg;
  auto* bounds = app.add_subcommand("bounds", "order estimates and certified bounds for one instance");
  add_common(bounds, cfg, true);

  auto* estimate = app.add_subcommand("estimate", "numerical width estimate (N <= 16)");
  add_common(estimate, cfg, true);
  bool with_primal = false;
  bool allow_large = false;
  estimate->add_flag("--primal", with_primal, "also run the direct Gelfand estimate and report the duality gap");
  estimate->add_flag("--allow-large", allow_large, "lift the N <= 16 limit");

  auto* sweep = app.add_subcommand("sweep", "table of bounds over a range of n, dimensions or radius ratios");
  add_common(sweep, cfg, true);
  SweepSpec sweep_spec;
  sweep->add_option("--n-range", sweep_spec.n_range, "FROM:TO, inclusive (default 0:N/2)");
  sweep->add_option("--dims", sweep_spec.dims, "dimensions to sweep (default: the instance's N)")->delimiter(',');
  sweep->add_option("--nu-ratios", sweep_spec.ratios, "values of nu_1/nu_2 to sweep")->delimiter(',');
  sweep->add_flag("--oracle", sweep_spec.oracle, "add the oracle estimate column");

  auto* sobolev = app.add_subcommand("sobolev", "width exponent for an intersection of Sobolev classes");
  add_common(sobolev, cfg, true);

  auto* verify = app.add_subcommand("verify", "run the verification suites");
  add_common(verify, cfg, false);
  VerifySpec verify_spec;
  verify->add_option("--c", verify_spec.c, "constant for the norm-inequality suite")->check(CLI::PositiveNumber);
  verify->add_flag("--swap-lambda", verify_spec.swap_lambda, "hand the formulas a lambda with p_i and p_j exchanged");
  verify->add_option("--suite", verify_spec.suites, "run only these suites")
      ->check(CLI::IsMember(
          {"norm_inequality", "quadratic", "duality", "exact", "sandwich", "consistency", "specialization", "sobolev"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*bounds) return cmd_bounds(cfg);
    if (*estimate) return cmd_estimate(cfg, with_primal, allow_large);
    if (*sweep) return cmd_sweep(cfg, sweep_spec);
    if (*sobolev) return cmd_sobolev(cfg);
    if (*verify) return cmd_verify(cfg, verify_spec);
  } catch (const widthlab::error& e) {
    std::cerr << "widthlab: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
