#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace symcalc::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2, kNumericalFailure = 3 };

/// Resolved settings of one invocation; every report embeds them.
struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  int modes = -1;  // -1: command default
  int depth = -1;  // -1: keep the input's depth
  int band = -1;   // -1: no re-banding
  double eps_min = 1e-4;
  double eps_max = 1e-2;
  int eps_count = 40;
  std::uint64_t seed = 7;
  double tol = 1e-3;
  std::string out;
};

/// Parses `args` (without the program name) and runs the chosen subcommand.
/// Reports go to `out`, diagnostics to `err`; the return value is an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symcalc::cli
