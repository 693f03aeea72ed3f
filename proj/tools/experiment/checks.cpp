#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <Eigen/Eigenvalues>

#include "rsel/adaptive.hpp"
#include "rsel/apcs.hpp"
#include "rsel/oracle.hpp"
#include "rsel/rng.hpp"

namespace rsel::tools {

namespace {

// Sequential draws for case `index` of check `check`.
class CaseRng {
 public:
  CaseRng(std::uint64_t seed, std::uint32_t check, std::uint32_t index)
      : stream_(derive_key(seed, check), index, 0, StreamTag::kCheck) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * stream_.uniform(); }
  std::size_t integer(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(stream_.next_u64() % (hi - lo + 1));
  }

 private:
  CounterStream stream_;
};

ProblemInstance random_instance(CaseRng& rng, std::size_t k_min, std::size_t k_max) {
  const std::size_t k = rng.integer(k_min, k_max);
  const std::size_t best = rng.integer(0, k - 1);
  std::vector<double> means(k), variances(k);
  for (std::size_t i = 0; i < k; ++i) {
    means[i] = i == best ? 0.0 : rng.uniform(0.2, 5.0);
    variances[i] = rng.uniform(1.0, 64.0);
  }
  return ProblemInstance::make(std::move(means), std::move(variances));
}

// Uniform point of the simplex conditioned on every weight >= floor.
std::vector<double> random_interior(CaseRng& rng, std::size_t k, double floor) {
  std::vector<double> w(k);
  for (;;) {
    double sum = 0.0;
    for (double& x : w) {
      x = -std::log(rng.uniform(0.0, 1.0));
      sum += x;
    }
    bool ok = true;
    for (double& x : w) {
      x /= sum;
      ok &= x >= floor;
    }
    if (ok) return w;
  }
}

std::string format(const char* fmt, double value) {
  char buf[96];
  std::snprintf(buf, sizeof buf, fmt, value);
  return buf;
}

struct Solved {
  InformationRatios ratios;
  double t0;
};

Solved solve(const ProblemInstance& inst) {
  InformationRatios ratios = information_ratios(inst);
  const double t0 = feasibility_threshold(ratios, inst.variances, inst.best).t0;
  return {std::move(ratios), t0};
}

// Random budget at or above max(T0, 1).
double budget_above(CaseRng& rng, double t0) {
  const double floor = std::max(t0, 1.0);
  switch (rng.integer(0, 2)) {
    case 0: return floor;
    case 1: return floor + rng.uniform(0.0, 50.0);
    default: return floor * std::exp(rng.uniform(0.0, std::log(1e4)));
  }
}

}  // namespace

CheckResult check_hessian_psd(const CheckConfig& c) {
  CheckResult out{"hessian_psd", true, c.hessian_cases, {}};
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < c.hessian_cases; ++n) {
    CaseRng rng(c.seed, 0, static_cast<std::uint32_t>(n));
    const ProblemInstance inst = random_instance(rng, 2, 6);
    const AllocationVector w = AllocationVector::normalized(random_interior(rng, inst.size(), 0.01));
    const double budget = rng.uniform(5.0, 2000.0);
    const SquareMatrix h = numerical_hessian(inst, w, budget);
    Eigen::MatrixXd m(h.n, h.n);
    for (std::size_t i = 0; i < h.n; ++i) {
      for (std::size_t j = 0; j < h.n; ++j) m(i, j) = 0.5 * (h(i, j) + h(j, i));
    }
    const double smallest = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues()(0);
    worst = std::min(worst, smallest);
    out.passed &= smallest >= -1e-6;
  }
  out.detail = format("min eigenvalue %.3e", worst);
  return out;
}

CheckResult check_budget_identity(const CheckConfig& c) {
  CheckResult out{"budget_identity", true, c.identity_cases, {}};
  double worst = 0.0;
  for (std::size_t n = 0; n < c.identity_cases; ++n) {
    CaseRng rng(c.seed, 1, static_cast<std::uint32_t>(n));
    const ProblemInstance inst = random_instance(rng, 2, 20);
    const Solved s = solve(inst);
    const double budget = budget_above(rng, s.t0);
    const AdaptiveSolution sol = adaptive_ratios(s.ratios, inst.variances, inst.best, budget);
    double nonbest = 0.0;
    double weighted = 0.0;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      if (i == inst.best) continue;
      nonbest += sol.raw_weights[i];
      weighted += sol.raw_weights[i] * sol.raw_weights[i] / inst.variances[i];
    }
    const double gap =
        std::abs(nonbest + std::sqrt(inst.variances[inst.best] * weighted) - 1.0);
    worst = std::max(worst, gap);
    out.passed &= gap <= 1e-8;
  }
  out.detail = format("max |sum W - 1| %.3e", worst);
  return out;
}

CheckResult check_feasibility_threshold(const CheckConfig& c) {
  CheckResult out{"feasibility_threshold", true, c.random_cases, {}};
  double worst = std::numeric_limits<double>::infinity();
  std::size_t activations = 0;
  for (std::size_t n = 0; n < c.random_cases; ++n) {
    CaseRng rng(c.seed, 2, static_cast<std::uint32_t>(n));
    const ProblemInstance inst = random_instance(rng, 2, 20);
    const Solved s = solve(inst);
    for (int j = 0; j < 5; ++j) {
      const double budget = budget_above(rng, s.t0);
      const AdaptiveSolution sol = adaptive_ratios(s.ratios, inst.variances, inst.best, budget);
      for (double w : sol.raw_weights) worst = std::min(worst, w);
      // W(T0) touches zero exactly, so allow rounding there.
      out.passed &= *std::min_element(sol.raw_weights.begin(), sol.raw_weights.end()) >= -1e-12;
    }
    if (s.t0 <= 1.0) continue;
    for (int j = 0; j < 5; ++j) {
      const double budget = rng.uniform(0.0, 1.0) * s.t0 + 1e-9;
      bool negative = false;
      try {
        const AdaptiveSolution raw = adaptive_ratios(s.ratios, inst.variances, inst.best, budget);
        negative = *std::min_element(raw.raw_weights.begin(), raw.raw_weights.end()) < 0.0;
      } catch (const Infeasible&) {
        negative = true;
      }
      if (!negative) continue;
      ++activations;
      const AdaptiveSolution clamped = clamped_ratios(s.ratios, inst.variances, inst.best, budget);
      out.passed &= clamped.clamped;
    }
  }
  out.passed &= activations > 0;
  out.detail = format("min W above T0 %.3e", worst) + ", clamp activations " +
               std::to_string(activations);
  return out;
}

CheckResult check_alpha_ordering(const CheckConfig& c) {
  CheckResult out{"alpha_ordering", true, c.random_cases, {}};
  std::size_t equal_cases = 0;
  for (std::size_t n = 0; n < c.random_cases; ++n) {
    CaseRng rng(c.seed, 3, static_cast<std::uint32_t>(n));
    ProblemInstance inst = random_instance(rng, 3, 20);
    const bool all_equal = n % 4 == 0;
    if (all_equal) {
      // sigma_i / delta_i constant across the non-best designs.
      const double ratio = rng.uniform(0.5, 4.0);
      for (std::size_t i = 0; i < inst.size(); ++i) {
        if (i != inst.best) inst.means[i] = std::sqrt(inst.variances[i]) / ratio;
      }
      ++equal_cases;
    }
    const Solved s = solve(inst);
    const double budget = budget_above(rng, s.t0);
    const AdaptiveSolution sol = adaptive_ratios(s.ratios, inst.variances, inst.best, budget);

    std::vector<std::pair<double, double>> pairs;  // (I_i, alpha_i)
    for (std::size_t i = 0; i < inst.size(); ++i) {
      if (i != inst.best) pairs.emplace_back(s.ratios.ivec[i], sol.alphas[i]);
    }
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t i = 1; i < pairs.size(); ++i) {
      out.passed &= pairs[i].second <= pairs[i - 1].second + 1e-12;
    }
    const double top = pairs.front().second;
    const double bottom = pairs.back().second;
    if (all_equal) {
      out.passed &= std::abs(top - 1.0) <= 1e-9 && std::abs(bottom - 1.0) <= 1e-9;
    } else {
      out.passed &= top > 1.0 && bottom < 1.0;
    }
  }
  out.detail = std::to_string(equal_cases) + " equal-ratio cases";
  return out;
}

CheckResult check_asymptotic_limit(const CheckConfig& c) {
  CheckResult out{"asymptotic_limit", true, c.random_cases, {}};
  double worst = 0.0;
  for (std::size_t n = 0; n < c.random_cases; ++n) {
    CaseRng rng(c.seed, 4, static_cast<std::uint32_t>(n));
    const ProblemInstance inst = random_instance(rng, 2, 20);
    const Solved s = solve(inst);
    const AllocationVector limit = ocba_ratios(s.ratios);
    const AdaptiveSolution sol =
        clamped_ratios(s.ratios, inst.variances, inst.best, 1e8 * s.ratios.total);
    for (std::size_t i = 0; i < inst.size(); ++i) {
      worst = std::max(worst, std::abs(sol.weights[i] - limit[i]));
    }
  }
  out.passed = worst <= 1e-3;
  out.detail = format("max |W - w*| %.3e", worst);
  return out;
}

CheckResult check_apcs_sandwich(const CheckConfig& c) {
  CheckResult out{"apcs_sandwich", true, c.sandwich_cases, {}};
  double worst = 0.0;
  double worst_informative = 0.0;  // cases whose optimal APCS is at least 0.8
  std::size_t informative = 0;
  for (std::size_t n = 0; n < c.sandwich_cases; ++n) {
    CaseRng rng(c.seed, 5, static_cast<std::uint32_t>(n));
    // The approximation assumes many designs; use the synthetic examples' range.
    const ProblemInstance inst = random_instance(rng, 10, 50);
    const Solved s = solve(inst);
    // W(T0) itself may put zero weight on a design, where APCS is undefined.
    const double budget = budget_above(rng, std::floor(s.t0) + 1.0);
    const AdaptiveSolution sol = clamped_ratios(s.ratios, inst.variances, inst.best, budget);
    const AllocationVector best = numeric_apcs_maximizer(inst, budget);
    const double ceiling = apcs(inst, best, budget);
    const double achieved = apcs(inst, sol.weights, budget);
    worst = std::max(worst, ceiling - achieved);
    if (ceiling >= 0.8) {
      ++informative;
      worst_informative = std::max(worst_informative, ceiling - achieved);
    }
    out.passed &= achieved <= ceiling + 1e-9 && achieved >= ceiling - 5e-3;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "max APCS shortfall %.3e; %.3e over the %zu cases with optimal APCS >= 0.8",
                worst, worst_informative, informative);
  out.detail = buf;
  return out;
}

CheckResult check_best_weight_bound(const CheckConfig& c) {
  CheckResult out{"best_weight_bound", true, c.random_cases, {}};
  double tightest = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < c.random_cases; ++n) {
    CaseRng rng(c.seed, 6, static_cast<std::uint32_t>(n));
    const ProblemInstance inst = random_instance(rng, 2, 200);
    const AllocationVector w = ocba_ratios(information_ratios(inst));
    double min_w = std::numeric_limits<double>::infinity();
    double max_sigma = 0.0;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      if (i == inst.best) continue;
      min_w = std::min(min_w, w[i]);
      max_sigma = std::max(max_sigma, std::sqrt(inst.variances[i]));
    }
    const double bound = std::sqrt(inst.variances[inst.best]) *
                         std::sqrt(static_cast<double>(inst.size() - 1)) * min_w / max_sigma;
    tightest = std::min(tightest, w[inst.best] / bound);
    out.passed &= w[inst.best] >= bound * (1.0 - 1e-12);
  }
  out.detail = format("min ratio w_b / bound %.4f", tightest);
  return out;
}

std::vector<CheckResult> run_checks(const CheckConfig& c) {
  return {check_hessian_psd(c),        check_budget_identity(c), check_feasibility_threshold(c),
          check_alpha_ordering(c),     check_asymptotic_limit(c), check_apcs_sandwich(c),
          check_best_weight_bound(c)};
}

}  // namespace rsel::tools
