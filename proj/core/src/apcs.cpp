#include "rsel/apcs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rsel/normal.hpp"

namespace rsel {

namespace {

void check_weights(const ProblemInstance& instance, std::span<const double> w,
                   double budget) {
  if (w.size() != instance.size()) {
    throw std::invalid_argument("apcs: allocation size does not match instance");
  }
  if (!(budget > 0.0)) throw std::invalid_argument("apcs: budget must be > 0");
  for (double x : w) {
    if (!(x > 0.0)) throw std::invalid_argument("apcs: every weight must be > 0");
  }
}

long double complement_extended(const ProblemInstance& inst,
                                std::span<const long double> w, long double budget) {
  const std::size_t b = inst.best;
  const long double vb = static_cast<long double>(inst.variances[b]) / w[b];
  long double sum = 0.0L;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (i == b) continue;
    const long double delta =
        static_cast<long double>(inst.means[i]) - static_cast<long double>(inst.means[b]);
    const long double v = static_cast<long double>(inst.variances[i]) / w[i] + vb;
    sum += normal_cdf(-delta * std::sqrt(budget / v));
  }
  return sum;
}

}  // namespace

GapStatistics gap_statistics(const ProblemInstance& instance,
                             const AllocationVector& alloc, double budget) {
  check_weights(instance, alloc.weights(), budget);
  const std::size_t k = instance.size();
  const std::size_t b = instance.best;
  GapStatistics gaps{std::vector<double>(k, 0.0), std::vector<double>(k, 0.0)};
  const double vb = instance.variances[b] / (alloc[b] * budget);
  for (std::size_t i = 0; i < k; ++i) {
    if (i == b) continue;
    gaps.delta[i] = instance.means[i] - instance.means[b];
    gaps.sigmaib[i] = std::sqrt(instance.variances[i] / (alloc[i] * budget) + vb);
  }
  return gaps;
}

double apcs(const ProblemInstance& instance, const AllocationVector& alloc,
            double budget) {
  return 1.0 - apcs_complement(instance, alloc.weights(), budget);
}

double apcs_complement(const ProblemInstance& instance, std::span<const double> w,
                       double budget) {
  check_weights(instance, w, budget);
  const std::size_t b = instance.best;
  const double vb = instance.variances[b] / w[b];
  double sum = 0.0;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (i == b) continue;
    const double delta = instance.means[i] - instance.means[b];
    const double v = instance.variances[i] / w[i] + vb;
    sum += normal_cdf(-delta * std::sqrt(budget / v));
  }
  return sum;
}

LogComplement log_apcs_complement(const ProblemInstance& instance,
                                  std::span<const double> w, double budget) {
  check_weights(instance, w, budget);
  const std::size_t k = instance.size();
  const std::size_t b = instance.best;
  const double vb = instance.variances[b] / w[b];
  const double root_t = std::sqrt(budget);

  std::vector<double> u(k, 0.0), v(k, 0.0), log_tail(k, 0.0);
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    if (i == b) continue;
    v[i] = instance.variances[i] / w[i] + vb;
    u[i] = (instance.means[i] - instance.means[b]) * root_t / std::sqrt(v[i]);
    log_tail[i] = log_normal_cdf(-u[i]);
    max_log = std::max(max_log, log_tail[i]);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (i != b) acc += std::exp(log_tail[i] - max_log);
  }
  LogComplement out;
  out.value = max_log + std::log(acc);
  out.gradient.assign(k, 0.0);

  // d log g / dw = -(1/g) sum_i phi(u_i) du_i/dw, with
  // du_i/dw_i = u_i sigma_i^2 / (2 v_i w_i^2), du_i/dw_b = u_i sigma_b^2 / (2 v_i w_b^2).
  constexpr double kLogSqrt2Pi = 0.91893853320467274178;
  for (std::size_t i = 0; i < k; ++i) {
    if (i == b) continue;
    const double density_ratio = std::exp(-0.5 * u[i] * u[i] - kLogSqrt2Pi - out.value);
    const double common = density_ratio * u[i] / (2.0 * v[i]);
    out.gradient[i] -= common * instance.variances[i] / (w[i] * w[i]);
    out.gradient[b] -= common * instance.variances[b] / (w[b] * w[b]);
  }
  return out;
}

SquareMatrix numerical_hessian(const ProblemInstance& instance,
                               const AllocationVector& alloc, double budget,
                               double step) {
  if (!(step > 0.0) || step > 1e-3) {
    throw std::invalid_argument("numerical_hessian: step must lie in (0, 1e-3]");
  }
  check_weights(instance, alloc.weights(), budget);
  for (double x : alloc.weights()) {
    if (!(x > step)) {
      throw std::invalid_argument("numerical_hessian: allocation is not interior");
    }
  }
  const std::size_t k = instance.size();
  std::vector<long double> point(alloc.weights().begin(), alloc.weights().end());
  const long double t = budget;
  const long double h = step;
  auto eval = [&]() { return complement_extended(instance, point, t); };
  const long double center = eval();

  SquareMatrix hessian(k);
  for (std::size_t i = 0; i < k; ++i) {
    const long double wi = point[i];
    point[i] = wi + h;
    const long double plus = eval();
    point[i] = wi - h;
    const long double minus = eval();
    point[i] = wi;
    hessian(i, i) = static_cast<double>((plus - 2.0L * center + minus) / (h * h));
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const long double wi = point[i];
      const long double wj = point[j];
      long double acc = 0.0L;
      for (int si : {1, -1}) {
        for (int sj : {1, -1}) {
          point[i] = wi + si * h;
          point[j] = wj + sj * h;
          acc += static_cast<long double>(si * sj) * eval();
        }
      }
      point[i] = wi;
      point[j] = wj;
      const double value = static_cast<double>(acc / (4.0L * h * h));
      hessian(i, j) = value;
      hessian(j, i) = value;
    }
  }
  return hessian;
}

}  // namespace rsel
