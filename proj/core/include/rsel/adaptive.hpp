#pragma once

// Budget-adaptive allocation rule.
//
// For a finite budget T the OCBA ratios are rescaled per non-best design,
//
//   W_i(T) = w*_i * alpha_i(T),   alpha_i(T) = (lambda - 2 log I_i) / (1 + T/S),
//   W_b(T) = sigma_b * sqrt(sum_{i != b} W_i(T)^2 / sigma_i^2),
//
// where lambda is the root of p*lambda^2 + q*lambda + r = 0 that makes the
// weights sum to one. alpha_i(T) -> 1 as T -> inf, so W(T) -> w*. Designs that
// are hard to separate from the best (large I_i) get alpha_i < 1 and easy ones
// alpha_i > 1.
//
// W(T) is nonnegative for T >= T0 = max{T1, T2}. Below T0 the clamped rule
// substitutes W(ceil(T0)).

#include <cstddef>
#include <span>
#include <vector>

#include "rsel/core.hpp"
#include "rsel/ocba.hpp"

namespace rsel {

struct LambdaCoefficients {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
};

struct FeasibilityThreshold {
  double t0 = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
};

struct AdaptiveSolution {
  double lambda = 0.0;
  // alpha_i(T) for i != best; the entry at best is NaN.
  std::vector<double> alphas;
  // Feasible weights clamped to [0, inf) and renormalized.
  AllocationVector weights;
  // Unnormalized W_i(T) as produced by the closed form.
  std::vector<double> raw_weights;
  LambdaCoefficients coefficients;
  FeasibilityThreshold threshold;
  // Budget the closed form was evaluated at: T, or ceil(T0) when clamped.
  double anchor_budget = 0.0;
  bool clamped = false;
};

// True when w*_b is within 1e-9 of 1/2 (the quadratic degenerates).
bool on_half_branch(const InformationRatios& ratios, std::size_t best);

LambdaCoefficients lambda_coefficients(const InformationRatios& ratios,
                                       std::span<const double> variances,
                                       std::size_t best, double budget);

// Throws std::invalid_argument for budget <= 0 and NumericalError when
// q^2 - 4pr < -1e-9 q^2.
double solve_lambda(const InformationRatios& ratios, std::span<const double> variances,
                    std::size_t best, double budget);

std::vector<double> alpha_factors(const InformationRatios& ratios, std::size_t best,
                                  double lambda, double budget);

// Unclamped W(T). Throws Infeasible when some W_i < -1e-9 (i.e. T < T0).
AdaptiveSolution adaptive_ratios(const InformationRatios& ratios,
                                 std::span<const double> variances, std::size_t best,
                                 double budget);

FeasibilityThreshold feasibility_threshold(const InformationRatios& ratios,
                                           std::span<const double> variances,
                                           std::size_t best);

// W~(T): W(T) when T >= T0, otherwise W(ceil(T0)) with clamped = true.
AdaptiveSolution clamped_ratios(const InformationRatios& ratios,
                                std::span<const double> variances, std::size_t best,
                                double budget);

// Small-budget limit: H_i = 1 / I_i, H_b = sigma_b sqrt(sum H_i^2 / sigma_i^2).
AllocationVector small_budget_ratios(const InformationRatios& ratios,
                                     std::span<const double> variances, std::size_t best);

}  // namespace rsel
