#include "rsel/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rsel {

namespace {

constexpr double kHalfBranchTolerance = 1e-9;
constexpr double kDiscriminantTolerance = 1e-9;
constexpr double kNegativeWeightTolerance = 1e-9;
constexpr double kIdentityTolerance = 1e-6;

void check_inputs(const InformationRatios& ratios, std::span<const double> variances,
                  std::size_t best) {
  const std::size_t k = ratios.ivec.size();
  if (k < 2 || variances.size() != k || best >= k || !(ratios.total > 0.0)) {
    throw std::invalid_argument("adaptive: inconsistent information ratios");
  }
}

// Largest I_i over the non-best designs.
double max_nonbest(const InformationRatios& ratios, std::size_t best) {
  double m = 0.0;
  for (std::size_t i = 0; i < ratios.ivec.size(); ++i) {
    if (i != best) m = std::max(m, ratios.ivec[i]);
  }
  return m;
}

}  // namespace

bool on_half_branch(const InformationRatios& ratios, std::size_t best) {
  return std::abs(ratios.ivec[best] / ratios.total - 0.5) <= kHalfBranchTolerance;
}

namespace {

// Coefficients given log I_i for every design (entry at best unused).
LambdaCoefficients coefficients_from_logs(const InformationRatios& ratios,
                                          std::span<const double> variances,
                                          std::size_t best, double budget,
                                          std::span<const double> logs) {
  const double s = ratios.total;
  const double ib = ratios.ivec[best];
  const double var_b = variances[best];

  double sum_ilog = 0.0;     // sum I_i log I_i
  double sum_i2log = 0.0;    // sum I_i^2 log I_i / sigma_i^2
  double sum_i2log2 = 0.0;   // sum I_i^2 log^2 I_i / sigma_i^2
  for (std::size_t i = 0; i < ratios.ivec.size(); ++i) {
    if (i == best) continue;
    const double ii = ratios.ivec[i];
    const double li = logs[i];
    const double scaled = ii * ii / variances[i];
    sum_ilog += ii * li;
    sum_i2log += scaled * li;
    sum_i2log2 += scaled * li * li;
  }
  const double c = 2.0 * sum_ilog + budget + s;
  LambdaCoefficients out;
  out.p = s * (2.0 * ib - s);
  out.q = -4.0 * var_b * sum_i2log + 2.0 * (s - ib) * c;
  out.r = 4.0 * var_b * sum_i2log2 - c * c;
  return out;
}

double lambda_root(const LambdaCoefficients& c, bool half_branch) {
  if (half_branch) {
    // p == 0: the budget identity is linear in lambda.
    if (c.q == 0.0) throw NumericalError("solve_lambda: degenerate linear equation");
    return -c.r / c.q;
  }
  double disc = c.q * c.q - 4.0 * c.p * c.r;
  if (disc < 0.0) {
    if (disc < -kDiscriminantTolerance * c.q * c.q) {
      throw NumericalError("solve_lambda: negative discriminant");
    }
    disc = 0.0;
  }
  const double root = std::sqrt(disc);
  if (c.q >= 0.0) {
    const double denom = -c.q - root;
    if (denom == 0.0) throw NumericalError("solve_lambda: degenerate quadratic");
    return 2.0 * c.r / denom;
  }
  return (-c.q + root) / (2.0 * c.p);
}

std::vector<double> log_ratios(const InformationRatios& ratios, std::size_t best) {
  std::vector<double> logs(ratios.ivec.size(), 0.0);
  for (std::size_t i = 0; i < logs.size(); ++i) {
    if (i != best) logs[i] = std::log(ratios.ivec[i]);
  }
  return logs;
}

AdaptiveSolution solve_adaptive(const InformationRatios& ratios,
                                std::span<const double> variances, std::size_t best,
                                double budget, const FeasibilityThreshold& threshold) {
  if (!(budget > 0.0)) throw std::invalid_argument("adaptive_ratios: budget must be > 0");
  const std::vector<double> logs = log_ratios(ratios, best);
  const LambdaCoefficients coefficients =
      coefficients_from_logs(ratios, variances, best, budget, logs);
  const double lambda = lambda_root(coefficients, on_half_branch(ratios, best));

  const std::size_t k = ratios.ivec.size();
  const double scale = 1.0 + budget / ratios.total;
  std::vector<double> alphas(k, std::numeric_limits<double>::quiet_NaN());
  std::vector<double> raw(k, 0.0);
  double weighted = 0.0;
  double sum = 0.0;
  double min_weight = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    if (i == best) continue;
    alphas[i] = (lambda - 2.0 * logs[i]) / scale;
    raw[i] = ratios.ivec[i] / ratios.total * alphas[i];
    weighted += raw[i] * raw[i] / variances[i];
    sum += raw[i];
    min_weight = std::min(min_weight, raw[i]);
  }
  raw[best] = std::sqrt(variances[best] * weighted);
  sum += raw[best];

  if (min_weight < -kNegativeWeightTolerance) {
    throw Infeasible("adaptive_ratios: budget below the feasibility threshold");
  }
  if (!std::isfinite(sum) || std::abs(sum - 1.0) > kIdentityTolerance) {
    throw NumericalError("adaptive_ratios: closed-form weights do not sum to one");
  }

  std::vector<double> clipped(raw);
  for (double& w : clipped) w = std::max(w, 0.0);

  return AdaptiveSolution{
      .lambda = lambda,
      .alphas = std::move(alphas),
      .weights = AllocationVector::normalized(std::move(clipped)),
      .raw_weights = std::move(raw),
      .coefficients = coefficients,
      .threshold = threshold,
      .anchor_budget = budget,
      .clamped = false,
  };
}

}  // namespace

LambdaCoefficients lambda_coefficients(const InformationRatios& ratios,
                                       std::span<const double> variances,
                                       std::size_t best, double budget) {
  check_inputs(ratios, variances, best);
  return coefficients_from_logs(ratios, variances, best, budget, log_ratios(ratios, best));
}

double solve_lambda(const InformationRatios& ratios, std::span<const double> variances,
                    std::size_t best, double budget) {
  if (!(budget > 0.0)) throw std::invalid_argument("solve_lambda: budget must be > 0");
  return lambda_root(lambda_coefficients(ratios, variances, best, budget),
                     on_half_branch(ratios, best));
}

std::vector<double> alpha_factors(const InformationRatios& ratios, std::size_t best,
                                  double lambda, double budget) {
  const std::size_t k = ratios.ivec.size();
  if (best >= k) throw std::invalid_argument("alpha_factors: best out of range");
  const double scale = 1.0 + budget / ratios.total;
  std::vector<double> alphas(k, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < k; ++i) {
    if (i != best) alphas[i] = (lambda - 2.0 * std::log(ratios.ivec[i])) / scale;
  }
  return alphas;
}

AdaptiveSolution adaptive_ratios(const InformationRatios& ratios,
                                 std::span<const double> variances, std::size_t best,
                                 double budget) {
  const FeasibilityThreshold threshold = feasibility_threshold(ratios, variances, best);
  return solve_adaptive(ratios, variances, best, budget, threshold);
}

FeasibilityThreshold feasibility_threshold(const InformationRatios& ratios,
                                           std::span<const double> variances,
                                           std::size_t best) {
  check_inputs(ratios, variances, best);
  const double s = ratios.total;
  const double ib = ratios.ivec[best];
  const double var_b = variances[best];
  const double i_max = max_nonbest(ratios, best);

  double sum1 = 0.0;  // sum [sigma_b^2 I_i^2 / (sigma_i^2 (S - I_b)) - I_i] log(I_max/I_i)
  double sum2 = 0.0;  // sum I_i log(I_max/I_i)
  double sum3 = 0.0;  // sum I_i^2 / sigma_i^2 log^2(I_max/I_i)
  for (std::size_t i = 0; i < ratios.ivec.size(); ++i) {
    if (i == best) continue;
    const double ii = ratios.ivec[i];
    const double lg = std::log(i_max / ii);
    sum1 += (var_b * ii * ii / (variances[i] * (s - ib)) - ii) * lg;
    sum2 += ii * lg;
    sum3 += ii * ii / variances[i] * lg * lg;
  }
  FeasibilityThreshold out;
  out.t1 = 2.0 * sum1 - s;
  out.t2 = 2.0 * sum2 + 2.0 * std::sqrt(var_b) * std::sqrt(sum3) - s;
  out.t0 = std::max(out.t1, out.t2);
  return out;
}

AdaptiveSolution clamped_ratios(const InformationRatios& ratios,
                                std::span<const double> variances, std::size_t best,
                                double budget) {
  if (!(budget > 0.0)) throw std::invalid_argument("clamped_ratios: budget must be > 0");
  const FeasibilityThreshold threshold = feasibility_threshold(ratios, variances, best);
  if (budget >= threshold.t0) {
    return solve_adaptive(ratios, variances, best, budget, threshold);
  }
  AdaptiveSolution out =
      solve_adaptive(ratios, variances, best, std::ceil(threshold.t0), threshold);
  out.clamped = true;
  return out;
}

AllocationVector small_budget_ratios(const InformationRatios& ratios,
                                     std::span<const double> variances, std::size_t best) {
  check_inputs(ratios, variances, best);
  const std::size_t k = ratios.ivec.size();
  std::vector<double> h(k, 0.0);
  double weighted = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (i == best) continue;
    h[i] = 1.0 / ratios.ivec[i];
    weighted += h[i] * h[i] / variances[i];
  }
  h[best] = std::sqrt(variances[best] * weighted);
  return AllocationVector::normalized(std::move(h));
}

}  // namespace rsel
