#pragma once

// Runs every module invariant as a named check and reports pass/fail with wall time.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hitchin::checks {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  /// Multiplies the psi right-hand side in the painleve checks; 1.01 is the fault-injection setting.
  double rhs_scale = 1.0;
  int threads = 0;
  std::uint64_t seed = 20240611;
};

std::vector<CheckResult> run_check_suite(const SuiteOptions& opts = {});

/// One row per check; returns true iff every check passed.
bool print_report(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace hitchin::checks
