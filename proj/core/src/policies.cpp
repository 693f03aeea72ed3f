#include "rsel/policies.hpp"

#include <stdexcept>

#include "rsel/adaptive.hpp"

namespace rsel {

std::string_view policy_name(Policy policy) noexcept {
  switch (policy) {
    case Policy::kEqual: return "ea";
    case Policy::kOcba: return "ocba";
    case Policy::kFaa: return "faa";
    case Policy::kDaa: return "daa";
  }
  return "unknown";
}

std::optional<Policy> parse_policy(std::string_view name) noexcept {
  if (name == "ea") return Policy::kEqual;
  if (name == "ocba") return Policy::kOcba;
  if (name == "faa") return Policy::kFaa;
  if (name == "daa") return Policy::kDaa;
  return std::nullopt;
}

std::vector<std::size_t> PolicyState::counts() const {
  std::vector<std::size_t> out(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) out[i] = stats[i].count;
  return out;
}

std::size_t most_starving(std::span<const double> ratios,
                          std::span<const std::size_t> counts, std::size_t t) {
  if (ratios.empty() || ratios.size() != counts.size()) {
    throw std::invalid_argument("most_starving: size mismatch");
  }
  std::size_t total = 0;
  for (std::size_t n : counts) total += n;
  if (total != t) throw std::invalid_argument("most_starving: counts must sum to t");

  const double next = static_cast<double>(t + 1);
  std::size_t best = 0;
  double best_score = next * ratios[0] - static_cast<double>(counts[0]);
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    const double score = next * ratios[i] - static_cast<double>(counts[i]);
    if (score > best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

std::size_t most_starving(const AllocationVector& ratios,
                          std::span<const std::size_t> counts, std::size_t t) {
  return most_starving(ratios.weights(), counts, t);
}

PluginEstimate plugin_estimate(const PolicyState& state) {
  const std::size_t k = state.size();
  PluginEstimate est;
  est.best = estimated_best(state.stats);
  est.means.resize(k);
  est.variances.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    est.means[i] = state.stats[i].mean;
    est.variances[i] = state.stats[i].plugin_variance();
  }
  est.ratios = information_ratios(est.means, est.variances, est.best);
  return est;
}

namespace {

void check_state(const PolicyState& state) {
  if (state.size() < 2) throw std::invalid_argument("policy: need at least two designs");
  for (const SampleStats& s : state.stats) {
    if (s.count < 2 || s.count < state.n0) {
      throw std::invalid_argument("policy: state is not initialized");
    }
  }
}

std::size_t adaptive_next(const PolicyState& state, double anchor) {
  check_state(state);
  if (state.t >= state.budget) throw BudgetExhausted("policy: budget exhausted");
  const PluginEstimate est = plugin_estimate(state);
  const AdaptiveSolution sol =
      clamped_ratios(est.ratios, est.variances, est.best, anchor);
  return most_starving(sol.weights, state.counts(), state.t);
}

}  // namespace

AllocationVector policy_weights(Policy policy, const PolicyState& state) {
  check_state(state);
  switch (policy) {
    case Policy::kEqual:
      return AllocationVector::uniform(state.size());
    case Policy::kOcba:
      return ocba_ratios(plugin_estimate(state).ratios);
    case Policy::kFaa:
    case Policy::kDaa: {
      const PluginEstimate est = plugin_estimate(state);
      const double anchor = policy == Policy::kFaa ? static_cast<double>(state.budget)
                                                   : static_cast<double>(state.t + 1);
      return clamped_ratios(est.ratios, est.variances, est.best, anchor).weights;
    }
  }
  throw std::invalid_argument("policy_weights: unknown policy");
}

std::size_t faa_next(const PolicyState& state) {
  return adaptive_next(state, static_cast<double>(state.budget));
}

std::size_t daa_next(const PolicyState& state) {
  return adaptive_next(state, static_cast<double>(state.t + 1));
}

std::size_t ea_next(const PolicyState& state) {
  const AllocationVector uniform = AllocationVector::uniform(state.size());
  return most_starving(uniform, state.counts(), state.t);
}

std::size_t ocba_seq_next(const PolicyState& state) {
  check_state(state);
  return most_starving(ocba_ratios(plugin_estimate(state).ratios), state.counts(),
                       state.t);
}

std::size_t next_design(Policy policy, const PolicyState& state) {
  switch (policy) {
    case Policy::kEqual: return ea_next(state);
    case Policy::kOcba: return ocba_seq_next(state);
    case Policy::kFaa: return faa_next(state);
    case Policy::kDaa: return daa_next(state);
  }
  throw std::invalid_argument("next_design: unknown policy");
}

}  // namespace rsel
