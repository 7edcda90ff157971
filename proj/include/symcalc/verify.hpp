#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "symcalc/symbol.hpp"

namespace symcalc {

/// One measured quantity compared against a pinned tolerance.
struct CheckResult {
  int criterion = 0;
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
  /// Value is a wall-clock measurement and varies between runs.
  bool timing = false;
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  /// Upper bound on concurrently evaluated criteria; 0 reads SYMCALC_THREADS
  /// (default: hardware concurrency).
  int threads = 0;
};

/// Thread cap from SYMCALC_THREADS, falling back to the hardware concurrency.
int thread_cap_from_environment();

/// Random classical symbol with integer order, Gaussian Fourier coefficients of
/// scale decay^{|k|} on modes |k| <= band, and all levels down to `depth` filled.
ClassicalSymbol random_symbol(int order, int fiber_dim, int band, int depth, std::mt19937_64& rng,
                              double decay = 0.6);

/// Acceptance criteria 1..10 as runnable checks.
std::vector<CheckResult> check_criterion(int criterion, std::uint64_t seed);

/// Names accepted by run_suite: traces, composition, loopgroup, chern, all.
const std::vector<std::string>& suite_names();
/// Criteria covered by a suite; DomainError for an unknown name.
std::vector<int> suite_criteria(const std::string& suite);
/// Runs the criteria of the suite, fanning out over at most the configured thread count.
/// Results come back ordered by criterion.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace symcalc
