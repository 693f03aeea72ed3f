#pragma once

// Shared domain types for the ranking-and-selection toolkit.
//
// Conventions used throughout rsel:
//   * the best design is the one with the SMALLEST mean;
//   * designs are indexed 0..k-1;
//   * all reals are double precision.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsel {

// A numerical computation could not produce a meaningful result
// (negative discriminant, non-convergence, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An allocation rule produced weights outside the simplex.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sequential policy was asked for a replication after t reached T.
class BudgetExhausted : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Lower bound applied to any sample variance used as a plug-in estimate.
inline constexpr double kVarianceFloor = 1e-12;
// Lower bound applied to any plug-in mean gap before computing I_i.
inline constexpr double kGapFloor = 1e-8;
// Tolerance on sum(weights) == 1 for AllocationVector.
inline constexpr double kSimplexTolerance = 1e-9;

// Ground truth for a Gaussian R&S problem.
struct ProblemInstance {
  std::vector<double> means;
  std::vector<double> variances;
  std::size_t best = 0;

  // Validates the inputs and locates the unique best design.
  // Throws std::invalid_argument for k < 2, mismatched sizes, non-positive or
  // non-finite variances, non-finite means, or a tied minimum.
  static ProblemInstance make(std::vector<double> means,
                              std::vector<double> variances);

  std::size_t size() const noexcept { return means.size(); }
};

// Running count / mean / sum of squared deviations (Welford).
struct SampleStats {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  // Unbiased sample variance. Requires count >= 2.
  double variance() const;
  // variance() clamped below by kVarianceFloor.
  double plugin_variance() const;
};

// Returns stats with `sample` folded in.
SampleStats update_stats(SampleStats stats, double sample) noexcept;

// A point on the probability simplex.
class AllocationVector {
 public:
  // Throws std::invalid_argument unless every weight is finite and >= 0 and
  // the weights sum to 1 within kSimplexTolerance.
  explicit AllocationVector(std::vector<double> weights);

  // Scales a nonnegative vector with positive sum onto the simplex.
  static AllocationVector normalized(std::vector<double> weights);
  static AllocationVector uniform(std::size_t k);

  std::span<const double> weights() const noexcept { return weights_; }
  const std::vector<double>& vector() const noexcept { return weights_; }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::size_t size() const noexcept { return weights_.size(); }

 private:
  std::vector<double> weights_;
};

// Mean gaps and pooled deviations relative to the best design. Entries at
// index `best` are zero.
struct GapStatistics {
  std::vector<double> delta;
  std::vector<double> sigmaib;
};

// One sequential run: every replication allocated after initialization.
struct TrialTrace {
  struct Step {
    std::size_t t = 0;               // replications allocated before this step
    std::size_t design = 0;          // design receiving replication t+1
    std::size_t estimated_best = 0;  // argmin of sample means at t
  };
  std::vector<Step> steps;
  std::size_t selection = 0;
};

// argmin over sample means, lowest index on ties.
std::size_t estimated_best(std::span<const SampleStats> stats);
std::size_t argmin_lowest(std::span<const double> values);

}  // namespace rsel
