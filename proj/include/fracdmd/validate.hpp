#pragma once

#include <string>
#include <vector>

namespace fracdmd {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct ValidationOptions {
  // Relative perturbation applied to the product-integration weights inside
  // the rl_integral checks. Nonzero values are a negative control.
  double weight_perturbation = 0.0;
};

// Built-in oracle checks: fractional-calculus identities, Mittag-Leffler
// identities, Gram symmetry/PSD, q = 1 consistency, solver accuracy and order.
std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

std::string format_report(const std::vector<CheckResult>& results);

}  // namespace fracdmd
