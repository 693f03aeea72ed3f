#include "rsel/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "rsel/apcs.hpp"
#include "rsel/rng.hpp"

namespace rsel {

namespace {

void enumerate(std::size_t k, std::size_t units, std::size_t pos, std::size_t remaining,
               std::vector<std::size_t>& parts, std::vector<AllocationVector>& out) {
  if (pos + 1 == k) {
    parts[pos] = remaining;
    std::vector<double> w(k);
    for (std::size_t i = 0; i < k; ++i) {
      w[i] = static_cast<double>(parts[i]) / static_cast<double>(units);
    }
    out.push_back(AllocationVector::normalized(std::move(w)));
    return;
  }
  for (std::size_t c = 0; c <= remaining; ++c) {
    parts[pos] = c;
    enumerate(k, units, pos + 1, remaining - c, parts, out);
  }
}

// Tangent-space gradient spread relative to the mean gradient component.
double stationarity(const std::vector<double>& grad) {
  const double mean =
      std::accumulate(grad.begin(), grad.end(), 0.0) / static_cast<double>(grad.size());
  double spread = 0.0;
  for (double g : grad) spread = std::max(spread, std::abs(g - mean));
  return spread / std::max(1.0, std::abs(mean));
}

template <typename Normals>
PcsEstimate static_pcs_impl(const ProblemInstance& instance,
                            const std::vector<std::size_t>& counts,
                            std::size_t replications, Normals&& normal_at) {
  const std::size_t k = instance.size();
  std::vector<double> scale(k);
  for (std::size_t i = 0; i < k; ++i) {
    scale[i] = std::sqrt(instance.variances[i] / static_cast<double>(counts[i]));
  }
  std::size_t correct = 0;
  for (std::size_t r = 0; r < replications; ++r) {
    std::size_t selected = 0;
    double lowest = instance.means[0] + scale[0] * normal_at(r, 0);
    for (std::size_t i = 1; i < k; ++i) {
      const double mean = instance.means[i] + scale[i] * normal_at(r, i);
      if (mean < lowest) {
        lowest = mean;
        selected = i;
      }
    }
    correct += selected == instance.best;
  }
  return PcsEstimate::from_count(correct, replications);
}

double stream_normal(std::uint64_t seed, std::size_t r, std::size_t i) {
  CounterStream stream = CounterStream::for_sample(
      seed, r, static_cast<std::uint32_t>(i), 0, StreamTag::kStatic);
  return stream.normal();
}

void check_counts(const AllocationVector& alloc, const std::vector<std::size_t>& counts) {
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (alloc[i] <= 0.0 || counts[i] == 0) {
      throw std::invalid_argument("static_pcs: every design needs at least one replication");
    }
  }
}

}  // namespace

std::vector<AllocationVector> simplex_grid(std::size_t k, double step) {
  if (k < 2) throw std::invalid_argument("simplex_grid: need k >= 2");
  if (!(step > 0.0) || step > 1.0) {
    throw std::invalid_argument("simplex_grid: step must lie in (0, 1]");
  }
  const double inverse = 1.0 / step;
  const double units_real = std::round(inverse);
  if (std::abs(units_real * step - 1.0) > 1e-12) {
    throw std::invalid_argument("simplex_grid: step must divide 1");
  }
  const std::size_t units = static_cast<std::size_t>(units_real);
  std::vector<AllocationVector> out;
  std::vector<std::size_t> parts(k, 0);
  enumerate(k, units, 0, units, parts, out);
  return out;
}

std::vector<std::size_t> integerize(const AllocationVector& alloc, std::size_t budget) {
  const std::size_t k = alloc.size();
  std::vector<std::size_t> counts(k);
  std::vector<double> fraction(k);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double exact = alloc[i] * static_cast<double>(budget);
    // Absorb representation error such as 0.35 * 20 = 6.999999999999999.
    const double whole = std::floor(exact + 1e-9);
    counts[i] = static_cast<std::size_t>(whole);
    fraction[i] = std::max(exact - whole, 0.0);
    assigned += counts[i];
  }
  if (assigned > budget) throw std::logic_error("integerize: overshoot");
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return fraction[a] > fraction[b];
  });
  for (std::size_t j = 0; assigned < budget; j = (j + 1) % k) {
    ++counts[order[j]];
    ++assigned;
  }
  return counts;
}

PcsEstimate static_pcs(const ProblemInstance& instance, const AllocationVector& alloc,
                       std::size_t budget, const StaticPcsOptions& options) {
  if (alloc.size() != instance.size()) {
    throw std::invalid_argument("static_pcs: allocation size mismatch");
  }
  if (options.replications == 0) {
    throw std::invalid_argument("static_pcs: replications must be >= 1");
  }
  const std::vector<std::size_t> counts = integerize(alloc, budget);
  check_counts(alloc, counts);
  return static_pcs_impl(instance, counts, options.replications,
                         [&](std::size_t r, std::size_t i) {
                           return stream_normal(options.seed, r, i);
                         });
}

StaticSearchResult optimal_static_allocation(const ProblemInstance& instance,
                                             std::size_t budget, double step,
                                             const StaticPcsOptions& options) {
  if (options.replications == 0) {
    throw std::invalid_argument("optimal_static_allocation: replications must be >= 1");
  }
  const std::size_t k = instance.size();
  const std::vector<AllocationVector> grid = simplex_grid(k, step);

  // Same numbers static_pcs would draw, tabulated once.
  std::vector<double> normals(options.replications * k);
  for (std::size_t r = 0; r < options.replications; ++r) {
    for (std::size_t i = 0; i < k; ++i) normals[r * k + i] = stream_normal(options.seed, r, i);
  }
  auto table = [&](std::size_t r, std::size_t i) { return normals[r * k + i]; };

  std::optional<StaticSearchResult> best;
  std::size_t evaluated = 0;
  for (const AllocationVector& point : grid) {
    const std::vector<std::size_t> counts = integerize(point, budget);
    bool usable = true;
    for (std::size_t i = 0; i < k; ++i) usable &= point[i] > 0.0 && counts[i] > 0;
    if (!usable) continue;
    ++evaluated;
    const PcsEstimate pcs = static_pcs_impl(instance, counts, options.replications, table);
    if (!best || pcs.pcs > best->pcs.pcs) best = StaticSearchResult{point, pcs, 0};
  }
  if (!best) {
    throw std::invalid_argument("optimal_static_allocation: no grid point is usable");
  }
  best->points_evaluated = evaluated;
  return *best;
}

AllocationVector numeric_apcs_maximizer(const ProblemInstance& instance, double budget,
                                        const MaximizerOptions& options) {
  if (!(budget > 0.0)) throw std::invalid_argument("numeric_apcs_maximizer: budget must be > 0");
  const std::size_t k = instance.size();
  const std::size_t m = k - 1;

  std::vector<double> w(k, 1.0 / static_cast<double>(k));
  LogComplement current = log_apcs_complement(instance, w, budget);
  double damping = 1e-3;

  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    if (stationarity(current.gradient) <= options.tolerance) {
      return AllocationVector::normalized(w);
    }

    // Hessian of log g by central differences of the analytic gradient.
    std::vector<double> hess(k * k);
    std::vector<double> probe(w);
    for (std::size_t j = 0; j < k; ++j) {
      const double h = 1e-6 * w[j];
      probe[j] = w[j] + h;
      const auto up = log_apcs_complement(instance, probe, budget).gradient;
      probe[j] = w[j] - h;
      const auto down = log_apcs_complement(instance, probe, budget).gradient;
      probe[j] = w[j];
      for (std::size_t i = 0; i < k; ++i) hess[i * k + j] = (up[i] - down[i]) / (2.0 * h);
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        const double avg = 0.5 * (hess[i * k + j] + hess[j * k + i]);
        hess[i * k + j] = hess[j * k + i] = avg;
      }
    }

    // Tangent coordinates: d_i = u_i for i < k-1, d_{k-1} = -sum u_i.
    std::vector<double> reduced(m * m);
    std::vector<double> rgrad(m);
    const auto& g = current.gradient;
    for (std::size_t i = 0; i < m; ++i) {
      rgrad[i] = g[i] - g[m];
      for (std::size_t j = 0; j < m; ++j) {
        reduced[i * m + j] =
            hess[i * k + j] - hess[i * k + m] - hess[m * k + j] + hess[m * k + m];
      }
    }
    double scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(reduced[i * m + i]));
    if (!(scale > 0.0) || !std::isfinite(scale)) scale = 1.0;

    bool moved = false;
    for (int attempt = 0; attempt < 60 && !moved; ++attempt) {
      // Cholesky of the damped reduced Hessian.
      std::vector<double> l(reduced);
      for (std::size_t i = 0; i < m; ++i) l[i * m + i] += damping * scale;
      bool definite = true;
      for (std::size_t j = 0; j < m && definite; ++j) {
        double diag = l[j * m + j];
        for (std::size_t p = 0; p < j; ++p) diag -= l[j * m + p] * l[j * m + p];
        if (!(diag > 0.0)) {
          definite = false;
          break;
        }
        l[j * m + j] = std::sqrt(diag);
        for (std::size_t i = j + 1; i < m; ++i) {
          double v = l[i * m + j];
          for (std::size_t p = 0; p < j; ++p) v -= l[i * m + p] * l[j * m + p];
          l[i * m + j] = v / l[j * m + j];
        }
      }
      if (!definite) {
        damping *= 10.0;
        continue;
      }
      std::vector<double> u(m);
      for (std::size_t i = 0; i < m; ++i) {
        double v = -rgrad[i];
        for (std::size_t p = 0; p < i; ++p) v -= l[i * m + p] * u[p];
        u[i] = v / l[i * m + i];
      }
      for (std::size_t i = m; i-- > 0;) {
        double v = u[i];
        for (std::size_t p = i + 1; p < m; ++p) v -= l[p * m + i] * u[p];
        u[i] = v / l[i * m + i];
      }
      std::vector<double> d(k, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        d[i] = u[i];
        d[m] -= u[i];
      }
      // Stay strictly inside the simplex.
      double t = 1.0;
      for (std::size_t i = 0; i < k; ++i) {
        if (d[i] < 0.0) t = std::min(t, -0.9 * w[i] / d[i]);
      }
      double slope = 0.0;
      for (std::size_t i = 0; i < k; ++i) slope += g[i] * d[i];
      std::vector<double> trial(k);
      for (std::size_t i = 0; i < k; ++i) trial[i] = w[i] + t * d[i];
      LogComplement candidate = log_apcs_complement(instance, trial, budget);
      if (slope < 0.0 && candidate.value < current.value &&
          candidate.value <= current.value + 1e-4 * t * slope) {
        w.swap(trial);
        current = std::move(candidate);
        damping = std::max(damping * 0.1, 1e-12);
        moved = true;
      } else if (slope > -1e-15 * std::max(1.0, std::abs(current.value)) &&
                 candidate.value < current.value) {
        // Descent below rounding level: take the step only if it still helps.
        w.swap(trial);
        current = std::move(candidate);
        moved = true;
      } else {
        damping *= 10.0;
      }
    }
    if (!moved) {
      if (stationarity(current.gradient) <= std::sqrt(options.tolerance)) {
        return AllocationVector::normalized(w);
      }
      throw NumericalError("numeric_apcs_maximizer: no descent direction");
    }
  }
  throw NumericalError("numeric_apcs_maximizer: iteration cap reached");
}

}  // namespace rsel
