#include <benchmark/benchmark.h>

#include "rsel/adaptive.hpp"
#include "rsel/apcs.hpp"
#include "rsel/engine.hpp"
#include "rsel/facloc.hpp"
#include "rsel/instances.hpp"
#include "rsel/policies.hpp"

namespace {

rsel::PolicyState example_state(const rsel::ProblemInstance& inst, std::size_t per_design) {
  rsel::PolicyState s;
  s.n0 = 3;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    rsel::SampleStats st;
    st.count = per_design;
    st.mean = inst.means[i];
    st.m2 = inst.variances[i] * static_cast<double>(per_design - 1);
    s.stats.push_back(st);
  }
  s.t = per_design * inst.size();
  s.budget = s.t * 4;
  return s;
}

void BM_LambdaSolve(benchmark::State& state) {
  const auto inst = rsel::instances::example3();
  const auto ratios = rsel::information_ratios(inst);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rsel::solve_lambda(ratios, inst.variances, inst.best, 5000.0));
  }
}
BENCHMARK(BM_LambdaSolve);

void BM_ClampedRatios(benchmark::State& state) {
  const auto inst = rsel::instances::example3();
  const auto ratios = rsel::information_ratios(inst);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rsel::clamped_ratios(ratios, inst.variances, inst.best, 5000.0));
  }
}
BENCHMARK(BM_ClampedRatios);

void BM_PolicyStep(benchmark::State& state) {
  const auto policy = static_cast<rsel::Policy>(state.range(0));
  const auto inst = rsel::instances::example3();
  const auto s = example_state(inst, 10);
  for (auto _ : state) benchmark::DoNotOptimize(rsel::next_design(policy, s));
  state.SetLabel(std::string(rsel::policy_name(policy)));
}
BENCHMARK(BM_PolicyStep)->DenseRange(0, 3);

void BM_Apcs(benchmark::State& state) {
  const auto inst = rsel::instances::example3();
  const auto w = rsel::AllocationVector::uniform(inst.size());
  for (auto _ : state) benchmark::DoNotOptimize(rsel::apcs(inst, w, 5000.0));
}
BENCHMARK(BM_Apcs);

void BM_Trial(benchmark::State& state) {
  const auto policy = static_cast<rsel::Policy>(state.range(0));
  const rsel::GaussianSource src(rsel::instances::example1());
  rsel::TrialOptions o;
  o.budget = 1000;
  o.record_steps = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rsel::run_trial(src, policy, o).selection);
    ++o.replication;
  }
  state.SetLabel(std::string(rsel::policy_name(policy)));
}
BENCHMARK(BM_Trial)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_FaclocReplication(benchmark::State& state) {
  const auto design = rsel::facloc::standard_designs().front();
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(rsel::facloc::simulate_replication(design, 30, seed++));
}
BENCHMARK(BM_FaclocReplication)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
