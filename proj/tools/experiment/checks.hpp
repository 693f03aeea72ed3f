#pragma once

// Randomized property suite for the allocation rules.

#include <cstddef>
#include <string>
#include <vector>

#include "config.hpp"

namespace rsel::tools {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::size_t cases = 0;
  // Worst observed value of the checked quantity, human readable.
  std::string detail;
};

CheckResult check_hessian_psd(const CheckConfig& c);
CheckResult check_budget_identity(const CheckConfig& c);
CheckResult check_feasibility_threshold(const CheckConfig& c);
CheckResult check_alpha_ordering(const CheckConfig& c);
CheckResult check_asymptotic_limit(const CheckConfig& c);
CheckResult check_apcs_sandwich(const CheckConfig& c);
CheckResult check_best_weight_bound(const CheckConfig& c);

std::vector<CheckResult> run_checks(const CheckConfig& c);

}  // namespace rsel::tools
