#pragma once

// Cross-check suite: every closed form against its independent route.

#include <string>
#include <vector>

#include "thermamp/io.hpp"
#include "thermamp/params.hpp"

namespace thermamp {

struct CheckResult {
  std::string name;
  Json parameters;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  Json to_json() const;
};

struct VerifyOptions {
  /// Relative perturbation applied to the amplified mean photon number on the
  /// closed-form side of each comparison. Non-zero values are a negative
  /// control: checks that compare against an independent route should fail.
  double fuzz = 0.0;
  double tail_eps = 1e-12;
};

/// The standard parameter sweep: nbar in {0.1, 0.5, 1.5, 5}, gain in
/// {0.9, 1, 1.05, 1.2} restricted to the physical region, m in {0,1,2,3,5,8},
/// for the given variant.
std::vector<StateSpec> standard_grid(Variant variant);

/// Reference PND table at nbar = 1.5, g = 1.2, k = 0..5: column label, state and
/// the six printed values as strings so their printed precision is known.
struct PrintedColumn {
  std::string label;
  StateSpec spec;
  std::vector<std::string> printed;
};
std::vector<PrintedColumn> table1_reference();

VerificationReport run_verification(const VerifyOptions& options = {});

}  // namespace thermamp
