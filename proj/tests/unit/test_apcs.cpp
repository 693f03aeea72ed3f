#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "oracles.hpp"
#include "rsel/apcs.hpp"
#include "rsel/oracle.hpp"
#include "rsel/rng.hpp"

using rsel::AllocationVector;
using rsel::ProblemInstance;

namespace {

ProblemInstance three() { return ProblemInstance::make({1, 2, 3}, {36, 36, 36}); }

double min_eigenvalue(const rsel::SquareMatrix& h) {
  Eigen::MatrixXd m(h.n, h.n);
  for (std::size_t i = 0; i < h.n; ++i)
    for (std::size_t j = 0; j < h.n; ++j) m(i, j) = h(i, j);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff();
}

}  // namespace

TEST(Apcs, EqualAllocationThreeDesigns) {
  const auto inst = three();
  const double v = rsel::apcs(inst, AllocationVector::uniform(3), 30.0);
  const double ref = 1.0 - oracle::phi_cdf(-1.0 / std::sqrt(7.2)) - oracle::phi_cdf(-2.0 / std::sqrt(7.2));
  EXPECT_NEAR(v, ref, 1e-14);
  EXPECT_NEAR(v, 0.417, 5e-4);
}

TEST(Apcs, OverwhelmingGap) {
  const auto inst = ProblemInstance::make({0, 100}, {1, 1});
  EXPECT_GE(rsel::apcs(inst, AllocationVector::uniform(2), 4.0), 1.0 - 1e-12);
}

TEST(Apcs, IncreasesWithBudget) {
  const auto inst = three();
  const AllocationVector w({0.5, 0.3, 0.2});
  EXPECT_GT(rsel::apcs(inst, w, 1e6), rsel::apcs(inst, w, 1e3));
  EXPECT_LE(rsel::apcs(inst, w, 1e6), 1.0);
}

TEST(Apcs, RejectsBadInput) {
  const auto inst = three();
  EXPECT_THROW(rsel::apcs(inst, AllocationVector({0.5, 0.5, 0.0}), 10.0), std::invalid_argument);
  EXPECT_THROW(rsel::apcs(inst, AllocationVector::uniform(3), 0.0), std::invalid_argument);
  EXPECT_THROW(rsel::apcs(inst, AllocationVector::uniform(2), 10.0), std::invalid_argument);
}

TEST(Apcs, MatchesDefinitionOnRandomInstances) {
  for (std::uint32_t n = 0; n < 50; ++n) {
    rsel::CounterStream rng(rsel::derive_key(3, n), 0, 0, rsel::StreamTag::kCheck);
    const std::size_t k = 2 + n % 6;
    std::vector<double> mu(k), var(k), w(k);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      mu[i] = i == 0 ? 0.0 : 0.1 + 3.0 * rng.uniform();
      var[i] = 0.5 + 20.0 * rng.uniform();
      w[i] = 0.05 + rng.uniform();
      sum += w[i];
    }
    for (double& x : w) x /= sum;
    const double budget = 5.0 + 500.0 * rng.uniform();
    const auto inst = ProblemInstance::make(mu, var);
    EXPECT_NEAR(rsel::apcs(inst, AllocationVector::normalized(w), budget),
                oracle::apcs(mu, var, 0, w, budget), 1e-13);
  }
}

TEST(Apcs, LogComplementAndGradient) {
  const auto inst = ProblemInstance::make({0, 1, 1.5, 4}, {4, 9, 1, 16});
  const std::vector<double> w{0.3, 0.35, 0.2, 0.15};
  const double budget = 80.0;
  const auto lc = rsel::log_apcs_complement(inst, w, budget);
  EXPECT_NEAR(lc.value, std::log(rsel::apcs_complement(inst, w, budget)), 1e-12);
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto up = w, down = w;
    const double h = 1e-6;
    up[i] += h;
    down[i] -= h;
    const double fd = (std::log(rsel::apcs_complement(inst, up, budget)) -
                       std::log(rsel::apcs_complement(inst, down, budget))) / (2 * h);
    EXPECT_NEAR(lc.gradient[i], fd, 1e-6 * std::max(1.0, std::abs(fd))) << i;
  }
}

TEST(Apcs, LogComplementBeyondUnderflow) {
  const auto inst = ProblemInstance::make({0, 1}, {1, 1});
  const std::vector<double> w{0.5, 0.5};
  const double budget = 1e5;  // delta/sigma_ib ~ 158, Phi underflows
  const auto lc = rsel::log_apcs_complement(inst, w, budget);
  const double x = 1.0 / std::sqrt(4.0 / budget);
  EXPECT_NEAR(lc.value, -0.5 * x * x - std::log(x * std::sqrt(2 * M_PI)), 1e-3);
  EXPECT_TRUE(std::isfinite(lc.gradient[0]));
}

TEST(Apcs, BoundsMonteCarloPcs) {
  const auto inst = ProblemInstance::make({0, 0.5, 1.0, 1.2}, {4, 4, 9, 1});
  for (double budget : {40.0, 200.0}) {
    const AllocationVector w({0.4, 0.3, 0.2, 0.1});
    const auto mc = rsel::static_pcs(inst, w, static_cast<std::size_t>(budget), {20000, 4});
    EXPECT_LE(rsel::apcs(inst, w, budget), mc.pcs + 3 * mc.std_error);
  }
}

TEST(Hessian, SymmetricAndPsdThreeDesigns) {
  const auto inst = three();
  const auto h = rsel::numerical_hessian(inst, AllocationVector({0.4, 0.35, 0.25}), 100.0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_NEAR(h(i, j), h(j, i), 1e-6 * std::max(1.0, std::abs(h(i, j))));
  EXPECT_GE(min_eigenvalue(h), -1e-6);
}

TEST(Hessian, NonBestCrossPartialsVanish) {
  const auto inst = ProblemInstance::make({0, 1, 2, 0.5}, {9, 4, 1, 16});
  const auto h = rsel::numerical_hessian(inst, AllocationVector({0.3, 0.25, 0.2, 0.25}), 60.0);
  for (std::size_t i = 1; i < 4; ++i)
    for (std::size_t j = 1; j < 4; ++j)
      if (i != j) EXPECT_LE(std::abs(h(i, j)), 1e-6) << i << "," << j;
  EXPECT_GT(std::abs(h(0, 1)), 1e-6);
}

TEST(Hessian, PsdOnRandomInstances) {
  for (std::uint32_t n = 0; n < 100; ++n) {
    rsel::CounterStream rng(rsel::derive_key(8, n), 0, 0, rsel::StreamTag::kCheck);
    const std::size_t k = 3 + n % 6;
    std::vector<double> mu(k), var(k), w(k);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      mu[i] = i == 0 ? 0.0 : 0.2 + 4.0 * rng.uniform();
      var[i] = 1.0 + 50.0 * rng.uniform();
      w[i] = 0.1 + rng.uniform();
      sum += w[i];
    }
    for (double& x : w) x /= sum;
    const auto h = rsel::numerical_hessian(ProblemInstance::make(mu, var),
                                           AllocationVector::normalized(w), 10.0 + 990.0 * rng.uniform());
    EXPECT_GE(min_eigenvalue(h), -1e-6) << n;
  }
}

TEST(Hessian, RejectsBoundaryAllocation) {
  EXPECT_THROW(rsel::numerical_hessian(three(), AllocationVector({0.5, 0.5 - 1e-6, 1e-6}), 10.0),
               std::invalid_argument);
  EXPECT_THROW(rsel::numerical_hessian(three(), AllocationVector::uniform(3), 10.0, 0.01),
               std::invalid_argument);
}
