#pragma once

// Asymptotically optimal (OCBA) allocation:
//
//   I_i = sigma_i^2 / delta_ib^2                    (i != b)
//   I_b = sigma_b * sqrt(sum_{i != b} I_i^2 / sigma_i^2)
//   w*_i = I_i / S,  S = sum_i I_i.

#include <cstddef>
#include <span>
#include <vector>

#include "rsel/core.hpp"

namespace rsel {

struct InformationRatios {
  std::vector<double> ivec;
  double total = 0.0;
};

// Gaps at or below kGapFloor are clamped to kGapFloor. Throws
// std::invalid_argument for k < 2, size mismatch, best out of range,
// non-positive variances, or a design whose mean lies below means[best].
InformationRatios information_ratios(std::span<const double> means,
                                     std::span<const double> variances,
                                     std::size_t best);
InformationRatios information_ratios(const ProblemInstance& instance);

AllocationVector ocba_ratios(const InformationRatios& ratios);

// Diagnostic for the large-deviation balance conditions. With
// rate_i = delta_ib^2 / (sigma_i^2 / w_i + sigma_b^2 / w_b), returns
//   [rate_i - mean(rate) for i != b, in index order] followed by
//   w_b - sigma_b * sqrt(sum_{i != b} w_i^2 / sigma_i^2).
// All entries vanish iff alloc satisfies the balance conditions. Requires a
// strictly positive allocation.
std::vector<double> ld_balance_residuals(const ProblemInstance& instance,
                                         const AllocationVector& alloc);

}  // namespace rsel
