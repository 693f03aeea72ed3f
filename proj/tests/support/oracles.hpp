#pragma once

// Reference computations that share no code with the library.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using Float50 = boost::multiprecision::cpp_bin_float_50;

// Phi(x) to ~50 digits.
inline double phi_cdf(double x) {
  const Float50 arg = -Float50(x) / boost::multiprecision::sqrt(Float50(2));
  return static_cast<double>(boost::math::erfc(arg) / 2);
}

// log Phi(x) taken before leaving 50-digit arithmetic, so no underflow.
inline double log_phi_cdf(double x) {
  const Float50 arg = -Float50(x) / boost::multiprecision::sqrt(Float50(2));
  return static_cast<double>(boost::multiprecision::log(boost::math::erfc(arg) / 2));
}

inline double phi_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

struct Moments {
  double mean;
  double variance;
};

inline Moments two_pass(const std::vector<double>& xs) {
  long double sum = 0.0L;
  for (double x : xs) sum += x;
  const long double mean = sum / xs.size();
  long double ss = 0.0L;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {static_cast<double>(mean), static_cast<double>(ss / (xs.size() - 1))};
}

// Bonferroni bound straight from its definition.
inline double apcs(const std::vector<double>& mu, const std::vector<double>& var,
                   std::size_t best, const std::vector<double>& w, double budget) {
  double sum = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (i == best) continue;
    const double s = std::sqrt(var[i] / (w[i] * budget) + var[best] / (w[best] * budget));
    sum += phi_cdf(-(mu[i] - mu[best]) / s);
  }
  return 1.0 - sum;
}

// P(sample mean of best is the smallest) for independent Gaussian sample means
// with the given standard deviations, by Simpson's rule on the best's mean.
inline double static_pcs(const std::vector<double>& mu, const std::vector<double>& sd,
                         std::size_t best) {
  const int n = 4000;
  const double lo = -12.0, hi = 12.0, h = (hi - lo) / n;
  double acc = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double z = lo + j * h;
    const double x = mu[best] + sd[best] * z;
    double prod = phi_pdf(z);
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if (i != best) prod *= phi_cdf((mu[i] - x) / sd[i]);
    }
    acc += prod * (j == 0 || j == n ? 1.0 : (j % 2 ? 4.0 : 2.0));
  }
  return acc * h / 3.0;
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Allocation with equal large-deviation rates
//   delta_i^2 / (var_i / w_i + var_b / w_b)
// over the non-best designs and w_b = sigma_b sqrt(sum w_i^2 / var_i), by
// nested bisection: outer on w_b, inner on the common rate.
inline std::vector<double> balanced_allocation(const std::vector<double>& mu,
                                               const std::vector<double>& var,
                                               std::size_t best) {
  const std::size_t k = mu.size();
  auto nonbest = [&](double wb, double rate) {
    std::vector<double> w(k, 0.0);
    w[best] = wb;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == best) continue;
      const double d2 = (mu[i] - mu[best]) * (mu[i] - mu[best]);
      w[i] = var[i] / (d2 / rate - var[best] / wb);
    }
    return w;
  };
  auto inner = [&](double wb) {
    // Largest admissible rate keeps every denominator positive.
    double rmax = INFINITY;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == best) continue;
      const double d2 = (mu[i] - mu[best]) * (mu[i] - mu[best]);
      rmax = std::min(rmax, d2 * wb / var[best]);
    }
    const double rate = bisect(
        [&](double r) {
          const auto w = nonbest(wb, r);
          double s = 0.0;
          for (std::size_t i = 0; i < k; ++i) if (i != best) s += w[i];
          return s - (1.0 - wb);
        },
        rmax * 1e-12, rmax * (1.0 - 1e-15));
    return nonbest(wb, rate);
  };
  const double wb = bisect(
      [&](double b) {
        const auto w = inner(b);
        double s = 0.0;
        for (std::size_t i = 0; i < k; ++i) if (i != best) s += w[i] * w[i] / var[i];
        return b - std::sqrt(var[best] * s);
      },
      1e-6, 1.0 - 1e-6);
  return inner(wb);
}

}  // namespace oracle
