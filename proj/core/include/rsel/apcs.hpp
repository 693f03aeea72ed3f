#pragma once

// Bonferroni lower bound on the probability of correct selection:
//
//   APCS(w; T) = 1 - sum_{i != b} Phi(-delta_ib / sigma_ib),
//   sigma_ib   = sqrt(sigma_i^2 / (w_i T) + sigma_b^2 / (w_b T)).
//
// The complement g(w) = 1 - APCS is convex in w for every T > 0, which is
// what makes the static allocation problem a convex program.

#include <cstddef>
#include <span>
#include <vector>

#include "rsel/core.hpp"

namespace rsel {

// Dense row-major square matrix.
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<double> data;

  explicit SquareMatrix(std::size_t size) : n(size), data(size * size, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
};

// Requires every weight > 0 and budget > 0.
GapStatistics gap_statistics(const ProblemInstance& instance,
                             const AllocationVector& alloc, double budget);

// Throws std::invalid_argument on a zero weight or budget <= 0.
double apcs(const ProblemInstance& instance, const AllocationVector& alloc,
            double budget);

// g(w) = sum_{i != b} Phi(-delta_ib / sigma_ib) for any strictly positive w
// (not necessarily on the simplex).
double apcs_complement(const ProblemInstance& instance, std::span<const double> w,
                       double budget);

// log g(w) and its gradient, evaluated without underflow even when g itself
// is below the smallest double.
struct LogComplement {
  double value = 0.0;
  std::vector<double> gradient;
};
LogComplement log_apcs_complement(const ProblemInstance& instance,
                                  std::span<const double> w, double budget);

// Central-difference Hessian of g in unconstrained coordinates, evaluated in
// extended precision. Requires every weight > step and step in (0, 1e-3].
SquareMatrix numerical_hessian(const ProblemInstance& instance,
                               const AllocationVector& alloc, double budget,
                               double step = 1e-5);

}  // namespace rsel
