#pragma once

// Sequential trial runner and PCS estimation over macro replications.

#include <cstddef>
#include <cstdint>

#include "rsel/core.hpp"
#include "rsel/policies.hpp"
#include "rsel/rng.hpp"

namespace rsel {

// Draws one output sample of a design. Implementations must be deterministic
// functions of (design, stream) and safe to call concurrently.
class SamplingSource {
 public:
  virtual ~SamplingSource() = default;
  virtual std::size_t size() const noexcept = 0;
  virtual double sample(std::size_t design, CounterStream& stream) const = 0;
};

// X ~ N(mu_i, sigma_i^2).
class GaussianSource final : public SamplingSource {
 public:
  explicit GaussianSource(ProblemInstance instance) : instance_(std::move(instance)) {}

  std::size_t size() const noexcept override { return instance_.size(); }
  double sample(std::size_t design, CounterStream& stream) const override;
  const ProblemInstance& instance() const noexcept { return instance_; }

 private:
  ProblemInstance instance_;
};

struct PcsEstimate {
  double pcs = 0.0;
  double std_error = 0.0;
  std::size_t replications = 0;

  static PcsEstimate from_count(std::size_t correct, std::size_t replications);
};

struct TrialOptions {
  std::size_t n0 = 3;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  // Macro replication index; selects the per-replication stream family.
  std::uint64_t replication = 0;
  bool record_steps = true;
};

// Sample j of design i in replication r comes from
// CounterStream::for_sample(seed, r, i, j), j counting from 0, so a trace is
// independent of evaluation order. Throws std::invalid_argument when
// n0 < 2 or budget <= n0 * k.
TrialTrace run_trial(const SamplingSource& source, Policy policy,
                     const TrialOptions& options);

struct PcsOptions {
  std::size_t n0 = 3;
  std::size_t budget = 0;
  std::size_t replications = 10000;
  std::uint64_t seed = 0;
  // 0 means std::thread::hardware_concurrency().
  unsigned threads = 1;
};

PcsEstimate estimate_pcs(const SamplingSource& source, std::size_t true_best,
                         Policy policy, const PcsOptions& options);
PcsEstimate estimate_pcs(const ProblemInstance& instance, Policy policy,
                         const PcsOptions& options);

}  // namespace rsel
