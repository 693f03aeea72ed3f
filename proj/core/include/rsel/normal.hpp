#pragma once

// Standard normal distribution helpers.

namespace rsel {

// Phi(x), computed from the complementary error function so both tails keep
// full relative precision.
double normal_cdf(double x) noexcept;

// Extended-precision variant used by finite-difference code.
long double normal_cdf(long double x) noexcept;

double normal_pdf(double x) noexcept;

// log Phi(x); finite for every finite x (asymptotic series in the far left
// tail).
double log_normal_cdf(double x) noexcept;

// Phi^{-1}(p) for p in (0, 1), Wichura's AS 241 (PPND16), ~1e-16 relative.
// Returns -inf / +inf at p == 0 / p == 1 and NaN outside [0, 1].
double normal_quantile(double p) noexcept;

}  // namespace rsel
