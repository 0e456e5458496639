#pragma once

#include <span>
#include <string>

namespace mlnsocp {

struct SolveSample {
  int p_i = 0;
  int iterations = 0;
  double wall_seconds = 0.0;
};

struct ComplexityReport {
  bool conclusive = false;
  bool pass = false;
  double exponent = 0.0;  // slope of log median wall time vs log p_i
  double budget = 0.0;
  std::string detail;
};

// Requires samples for at least 4 distinct p_i values with at least 20
// solves each; fits log(median wall time) against log(p_i) and passes when
// the slope stays at or below the budget.
ComplexityReport complexity_budget_check(std::span<const SolveSample> samples,
                                         double budget_exponent = 2.6);

}  // namespace mlnsocp
