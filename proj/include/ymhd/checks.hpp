#pragma once

#include <string>
#include <vector>

#include "ymhd/action.hpp"

namespace ymhd {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool larger_is_better = false;  // e.g. fitted convergence orders
  bool pass = false;
};

struct CheckOptions {
  std::uint64_t seed = 0;
  bool corrupt_gamma = false;  // fault-injection hook
  ActionParams action;
};

/// The seeded property battery behind `check-invariants`: Clifford algebra,
/// operator adjointness, algebra tensors, gauge and conformal invariance,
/// gradient consistency, gauge fixing, scaling identities, IO round trips.
std::vector<CheckResult> run_invariant_battery(const CheckOptions& opt);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace ymhd
