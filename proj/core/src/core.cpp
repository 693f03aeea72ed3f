#include "rsel/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rsel {

ProblemInstance ProblemInstance::make(std::vector<double> means,
                                      std::vector<double> variances) {
  if (means.size() < 2) {
    throw std::invalid_argument("ProblemInstance: need at least two designs");
  }
  if (means.size() != variances.size()) {
    throw std::invalid_argument("ProblemInstance: means/variances size mismatch");
  }
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (!std::isfinite(means[i])) {
      throw std::invalid_argument("ProblemInstance: non-finite mean");
    }
    if (!std::isfinite(variances[i]) || variances[i] <= 0.0) {
      throw std::invalid_argument("ProblemInstance: variances must be finite and > 0");
    }
  }
  const std::size_t best = argmin_lowest(means);
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (i != best && !(means[best] < means[i])) {
      throw std::invalid_argument("ProblemInstance: best design is not unique");
    }
  }
  ProblemInstance inst;
  inst.means = std::move(means);
  inst.variances = std::move(variances);
  inst.best = best;
  return inst;
}

double SampleStats::variance() const {
  if (count < 2) {
    throw std::logic_error("SampleStats: variance needs at least two samples");
  }
  return m2 / static_cast<double>(count - 1);
}

double SampleStats::plugin_variance() const {
  return std::max(variance(), kVarianceFloor);
}

SampleStats update_stats(SampleStats stats, double sample) noexcept {
  stats.count += 1;
  const double delta = sample - stats.mean;
  stats.mean += delta / static_cast<double>(stats.count);
  stats.m2 += delta * (sample - stats.mean);
  if (stats.m2 < 0.0) stats.m2 = 0.0;
  return stats;
}

AllocationVector::AllocationVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw std::invalid_argument("AllocationVector: empty");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("AllocationVector: weights must be finite and >= 0");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw std::invalid_argument("AllocationVector: weights must sum to 1");
  }
}

AllocationVector AllocationVector::normalized(std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("AllocationVector: weights must be finite and >= 0");
    }
    sum += w;
  }
  if (!(sum > 0.0)) {
    throw std::invalid_argument("AllocationVector: weight sum must be positive");
  }
  for (double& w : weights) w /= sum;
  return AllocationVector(std::move(weights));
}

AllocationVector AllocationVector::uniform(std::size_t k) {
  if (k == 0) throw std::invalid_argument("AllocationVector: k must be positive");
  return AllocationVector(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

std::size_t argmin_lowest(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmin of an empty range");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return best;
}

std::size_t estimated_best(std::span<const SampleStats> stats) {
  if (stats.empty()) throw std::invalid_argument("estimated_best: no designs");
  std::size_t best = 0;
  for (std::size_t i = 1; i < stats.size(); ++i) {
    if (stats[i].mean < stats[best].mean) best = i;
  }
  return best;
}

}  // namespace rsel
