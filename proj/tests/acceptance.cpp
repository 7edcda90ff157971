// Acceptance run: one PASS/FAIL line per criterion, followed by the individual checks.
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include "symcalc/verify.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 7;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);

  symcalc::VerifyOptions options;
  options.seed = seed;
  std::vector<symcalc::CheckResult> checks;
  try {
    checks = symcalc::run_suite("all", options);
  } catch (const std::exception& e) {
    std::printf("FAIL  acceptance run aborted: %s\n", e.what());
    return 1;
  }

  bool all_ok = true;
  for (int criterion = 1; criterion <= 10; ++criterion) {
    bool ok = true;
    int count = 0;
    for (const auto& c : checks) {
      if (c.criterion != criterion) continue;
      ++count;
      ok = ok && c.pass;
    }
    ok = ok && count > 0;
    all_ok = all_ok && ok;
    std::printf("%s  criterion %d (%d checks)\n", ok ? "PASS" : "FAIL", criterion, count);
  }
  std::printf("\n");
  for (const auto& c : checks) {
    std::printf("  [%2d] %-4s %s: value=%.3e tol=%.3e%s%s\n", c.criterion, c.pass ? "ok" : "FAIL", c.name.c_str(),
                c.value, c.tolerance, c.detail.empty() ? "" : "  | ", c.detail.c_str());
  }
  std::printf("\nseed %llu: %s\n", static_cast<unsigned long long>(seed), all_ok ? "all criteria pass" : "FAILURES");
  return all_ok ? 0 : 1;
}
