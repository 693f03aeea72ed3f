#pragma once

// Brute-force ground truth for static allocations: exhaustive grid search of
// Monte Carlo PCS over the simplex, and a projected-gradient maximizer of the
// (concave) APCS bound.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rsel/core.hpp"
#include "rsel/engine.hpp"

namespace rsel {

// Every k-vector of nonnegative multiples of `step` summing to one, in
// lexicographic order of the coordinates. Throws std::invalid_argument unless
// 0 < step <= 1, 1/step is an integer within 1e-12, and k >= 2.
std::vector<AllocationVector> simplex_grid(std::size_t k, double step);

// Replication counts for `alloc` at budget T: floor(w_i T), with the
// remainder handed one each to the largest fractional parts (lowest index on
// ties). Counts always sum to T.
std::vector<std::size_t> integerize(const AllocationVector& alloc, std::size_t budget);

struct StaticPcsOptions {
  std::size_t replications = 100000;
  std::uint64_t seed = 0;
};

// Monte Carlo PCS of a static allocation. The sample mean of design i over
// N_i replications is drawn directly as mu_i + sigma_i / sqrt(N_i) * Z_ri, and
// Z_ri depends only on (seed, r, i), so all allocations evaluated under one
// seed share their random numbers. Throws std::invalid_argument when any
// design would receive zero replications.
PcsEstimate static_pcs(const ProblemInstance& instance, const AllocationVector& alloc,
                       std::size_t budget, const StaticPcsOptions& options);

struct StaticSearchResult {
  AllocationVector allocation;
  PcsEstimate pcs;
  std::size_t points_evaluated = 0;
};

// Grid point with the highest static_pcs; grid points that leave a design
// without replications are skipped. Ties go to the first point in grid order.
StaticSearchResult optimal_static_allocation(const ProblemInstance& instance,
                                             std::size_t budget, double step,
                                             const StaticPcsOptions& options);

struct MaximizerOptions {
  double tolerance = 1e-9;
  std::size_t max_iterations = 100000;
};

// Interior maximizer of APCS(w; T) by projected gradient descent on log g(w),
// started from equal allocation with backtracking step sizes. Stops once the
// gradient, projected onto the simplex tangent space and scaled by its mean
// component, falls below options.tolerance. Throws NumericalError when the
// iteration cap is reached first.
AllocationVector numeric_apcs_maximizer(const ProblemInstance& instance, double budget,
                                        const MaximizerOptions& options = {});

}  // namespace rsel
