#include "rsel/ocba.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsel {

InformationRatios information_ratios(std::span<const double> means,
                                     std::span<const double> variances,
                                     std::size_t best) {
  const std::size_t k = means.size();
  if (k < 2) throw std::invalid_argument("information_ratios: need k >= 2");
  if (variances.size() != k) {
    throw std::invalid_argument("information_ratios: means/variances size mismatch");
  }
  if (best >= k) throw std::invalid_argument("information_ratios: best out of range");

  InformationRatios out;
  out.ivec.assign(k, 0.0);
  double weighted = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(variances[i] > 0.0)) {
      throw std::invalid_argument("information_ratios: variances must be > 0");
    }
    if (i == best) continue;
    const double gap = means[i] - means[best];
    if (gap < 0.0) {
      throw std::invalid_argument("information_ratios: best does not have the smallest mean");
    }
    const double delta = std::max(gap, kGapFloor);
    const double ratio = variances[i] / (delta * delta);
    out.ivec[i] = ratio;
    weighted += ratio * ratio / variances[i];
  }
  out.ivec[best] = std::sqrt(variances[best] * weighted);
  for (double x : out.ivec) out.total += x;
  return out;
}

InformationRatios information_ratios(const ProblemInstance& instance) {
  return information_ratios(instance.means, instance.variances, instance.best);
}

AllocationVector ocba_ratios(const InformationRatios& ratios) {
  if (ratios.ivec.size() < 2 || !(ratios.total > 0.0)) {
    throw std::invalid_argument("ocba_ratios: invalid information ratios");
  }
  std::vector<double> w(ratios.ivec.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(ratios.ivec[i] > 0.0)) {
      throw std::invalid_argument("ocba_ratios: information ratios must be > 0");
    }
    w[i] = ratios.ivec[i] / ratios.total;
  }
  return AllocationVector::normalized(std::move(w));
}

std::vector<double> ld_balance_residuals(const ProblemInstance& instance,
                                         const AllocationVector& alloc) {
  const std::size_t k = instance.size();
  if (alloc.size() != k) {
    throw std::invalid_argument("ld_balance_residuals: size mismatch");
  }
  for (double w : alloc.weights()) {
    if (!(w > 0.0)) {
      throw std::invalid_argument("ld_balance_residuals: boundary allocation");
    }
  }
  const std::size_t b = instance.best;
  const double vb = instance.variances[b] / alloc[b];
  std::vector<double> rates;
  rates.reserve(k - 1);
  double weighted = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (i == b) continue;
    const double delta = instance.means[i] - instance.means[b];
    rates.push_back(delta * delta / (instance.variances[i] / alloc[i] + vb));
    weighted += alloc[i] * alloc[i] / instance.variances[i];
  }
  double mean_rate = 0.0;
  for (double r : rates) mean_rate += r;
  mean_rate /= static_cast<double>(rates.size());
  for (double& r : rates) r -= mean_rate;
  rates.push_back(alloc[b] - std::sqrt(instance.variances[b] * weighted));
  return rates;
}

}  // namespace rsel
