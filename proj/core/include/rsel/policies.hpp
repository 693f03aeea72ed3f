#pragma once

// Fully sequential allocation policies. Each call looks at the current sample
// statistics and names the design that receives the next replication.
//
//   ea    equal allocation (round robin via most-starving on 1/k)
//   ocba  most-starving on OCBA ratios from plug-in estimates
//   faa   most-starving on W~(T), the final budget T anchored
//   daa   most-starving on W~(t+1), the next step anchored

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsel/core.hpp"
#include "rsel/ocba.hpp"

namespace rsel {

enum class Policy { kEqual, kOcba, kFaa, kDaa };

std::string_view policy_name(Policy policy) noexcept;
std::optional<Policy> parse_policy(std::string_view name) noexcept;

struct PolicyState {
  std::vector<SampleStats> stats;
  std::size_t t = 0;
  std::size_t n0 = 0;
  std::size_t budget = 0;

  std::size_t size() const noexcept { return stats.size(); }
  std::vector<std::size_t> counts() const;
};

// argmax_i {(t+1) ratios_i - counts_i}, lowest index on ties. Requires
// sum(counts) == t.
std::size_t most_starving(std::span<const double> ratios,
                          std::span<const std::size_t> counts, std::size_t t);
std::size_t most_starving(const AllocationVector& ratios,
                          std::span<const std::size_t> counts, std::size_t t);

// Plug-in estimates at the current state: estimated best, floored sample
// variances and gap-clamped information ratios.
struct PluginEstimate {
  std::size_t best = 0;
  std::vector<double> means;
  std::vector<double> variances;
  InformationRatios ratios;
};
PluginEstimate plugin_estimate(const PolicyState& state);

// Allocation weights each policy would use at this state.
AllocationVector policy_weights(Policy policy, const PolicyState& state);

// Throws BudgetExhausted when state.t >= state.budget.
std::size_t faa_next(const PolicyState& state);
std::size_t daa_next(const PolicyState& state);
std::size_t ea_next(const PolicyState& state);
std::size_t ocba_seq_next(const PolicyState& state);

std::size_t next_design(Policy policy, const PolicyState& state);

}  // namespace rsel
