#include "rsel/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace rsel {

double GaussianSource::sample(std::size_t design, CounterStream& stream) const {
  return instance_.means[design] + std::sqrt(instance_.variances[design]) * stream.normal();
}

PcsEstimate PcsEstimate::from_count(std::size_t correct, std::size_t replications) {
  if (replications == 0) throw std::invalid_argument("PcsEstimate: no replications");
  PcsEstimate out;
  out.replications = replications;
  out.pcs = static_cast<double>(correct) / static_cast<double>(replications);
  out.std_error = std::sqrt(out.pcs * (1.0 - out.pcs) / static_cast<double>(replications));
  return out;
}

namespace {

double draw(const SamplingSource& source, const TrialOptions& options,
            std::size_t design, std::size_t index) {
  CounterStream stream = CounterStream::for_sample(
      options.seed, options.replication, static_cast<std::uint32_t>(design),
      static_cast<std::uint32_t>(index));
  return source.sample(design, stream);
}

}  // namespace

TrialTrace run_trial(const SamplingSource& source, Policy policy,
                     const TrialOptions& options) {
  const std::size_t k = source.size();
  if (k < 2) throw std::invalid_argument("run_trial: need at least two designs");
  if (options.n0 < 2) throw std::invalid_argument("run_trial: n0 must be >= 2");
  if (options.budget <= options.n0 * k) {
    throw std::invalid_argument("run_trial: budget must exceed n0 * k");
  }

  PolicyState state;
  state.stats.assign(k, SampleStats{});
  state.n0 = options.n0;
  state.budget = options.budget;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < options.n0; ++j) {
      state.stats[i] = update_stats(state.stats[i], draw(source, options, i, j));
    }
  }
  state.t = options.n0 * k;

  TrialTrace trace;
  if (options.record_steps) trace.steps.reserve(options.budget - state.t);
  while (state.t < options.budget) {
    const std::size_t design = next_design(policy, state);
    if (options.record_steps) {
      trace.steps.push_back({state.t, design, estimated_best(state.stats)});
    }
    SampleStats& s = state.stats[design];
    s = update_stats(s, draw(source, options, design, s.count));
    ++state.t;
  }
  trace.selection = estimated_best(state.stats);
  return trace;
}

PcsEstimate estimate_pcs(const SamplingSource& source, std::size_t true_best,
                         Policy policy, const PcsOptions& options) {
  if (options.replications == 0) {
    throw std::invalid_argument("estimate_pcs: replications must be >= 1");
  }
  if (true_best >= source.size()) throw std::invalid_argument("estimate_pcs: bad best");

  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::max(1u, threads);
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, options.replications));

  auto run_one = [&](std::size_t r) {
    TrialOptions trial{options.n0, options.budget, options.seed, r, false};
    return run_trial(source, policy, trial).selection == true_best;
  };

  if (threads == 1) {
    std::size_t correct = 0;
    for (std::size_t r = 0; r < options.replications; ++r) correct += run_one(r);
    return PcsEstimate::from_count(correct, options.replications);
  }

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> correct{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      std::size_t local = 0;
      try {
        for (std::size_t r = next++; r < options.replications; r = next++) {
          local += run_one(r);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = options.replications;
      }
      correct += local;
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return PcsEstimate::from_count(correct.load(), options.replications);
}

PcsEstimate estimate_pcs(const ProblemInstance& instance, Policy policy,
                         const PcsOptions& options) {
  GaussianSource source(instance);
  return estimate_pcs(source, instance.best, policy, options);
}

}  // namespace rsel
