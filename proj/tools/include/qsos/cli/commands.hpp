#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "qsos/cli/json_io.hpp"

namespace qsos::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,  // schema error, bad usage, verify above tolerance
  kNotPsd = 2,
  kGenericityExhausted = 3,
  kNumericalFailure = 4,
};

struct JobSpec {
  std::string command;  // decompose | classes | genericity | phi | normform | verify
  json input;
  Mode mode = Mode::floating;
  double tol = 1e-6;
  int max_retries = 3;
  bool json_output = false;
  bool trace = false;
  std::uint64_t seed = 0;
};

/// Runs one job. The result goes to `out`, diagnostics to `err`; with json_output
/// errors are also written to `out` as {"error": {...}}.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

}  // namespace qsos::cli
