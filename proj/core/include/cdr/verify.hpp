#pragma once

// Cross-validation of the closed-form, unitary and ODE engines.

#include <string>
#include <vector>

namespace cdr::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;   ///< worst observed deviation
  double tolerance = 0.0;
  std::string detail;
};

/// Canonical stage values, the pi/2 data-pulse chain, 4n*pi / 2pi control
/// recovery, analytic vs unitary vs RK4 agreement, rhs vs commutator, and
/// the area-theorem limits.
std::vector<CheckResult> run_all();

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace cdr::verify
