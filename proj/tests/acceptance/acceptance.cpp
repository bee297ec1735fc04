#include <chrono>
#include <cstdio>
#include <string>

#include "widthlab/widthlab.hpp"

namespace {

using namespace widthlab;

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
  std::printf("criterion %d %-28s %s  %s\n", id, title, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string counts(const SuiteResult& r) {
  std::string s = "checks=" + std::to_string(r.checks) + " failures=" + std::to_string(r.failures);
  if (r.inconclusive) s += " inconclusive=" + std::to_string(r.inconclusive);
  s += " (" + r.detail + ")";
  if (!r.passed && !r.counterexamples.empty()) s += " first: " + r.counterexamples.front();
  return s;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const VerifyOptions opt;

  const SuiteResult inequality = verify_norm_inequality(opt);
  VerifyOptions oversized = opt;
  oversized.c = 0.5;
  const SuiteResult mutated = verify_norm_inequality(oversized);
  report(1, "norm inequality", inequality.passed && inequality.failures == 0 && inequality.checks >= 100000 && !mutated.passed,
         counts(inequality) + "; c=1/2 violations=" + std::to_string(mutated.failures));

  const SuiteResult quad = verify_quadratic(opt);
  report(2, "quadratic infimum", quad.passed, counts(quad));

  const SuiteResult dual = verify_duality(opt);
  report(3, "duality", dual.passed && dual.checks == 12, counts(dual));

  const SuiteResult exact = verify_exact_cases(opt);
  report(4, "exact cases", exact.passed, counts(exact));

  const SuiteResult sandwich = verify_sandwich(opt, 50);
  report(5, "certified sandwich", sandwich.passed, counts(sandwich));

  const SuiteResult cons = verify_consistency(opt);
  VerifyOptions swapped = opt;
  swapped.lambda = swapped_lambda;
  const SuiteResult cons_mutated = verify_consistency(swapped);
  report(6, "formula consistency", cons.passed && !cons_mutated.passed,
         counts(cons) + "; swapped lambda failures=" + std::to_string(cons_mutated.failures));

  const SuiteResult spec = verify_specialization(opt);
  report(7, "group specialization", spec.passed, counts(spec));

  const SuiteResult sob = verify_sobolev(opt);
  report(8, "sobolev exponents", sob.passed, counts(sob));

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("total %.1f s, %d of 8 criteria failed\n", seconds, failures);
  return failures == 0 ? 0 : 1;
}
