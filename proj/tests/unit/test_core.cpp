#include <gtest/gtest.h>

#include <vector>

#include "oracles.hpp"
#include "rsel/core.hpp"
#include "rsel/rng.hpp"

using rsel::AllocationVector;
using rsel::ProblemInstance;
using rsel::SampleStats;

TEST(UpdateStats, SingleObservation) {
  const SampleStats s = rsel::update_stats(SampleStats{}, 5.0);
  EXPECT_EQ(s.count, 1u);
  EXPECT_DOUBLE_EQ(s.mean, 5.0);
  EXPECT_DOUBLE_EQ(s.m2, 0.0);
  EXPECT_THROW(s.variance(), std::logic_error);
}

TEST(UpdateStats, TextbookVariance) {
  SampleStats s;
  for (double x : {1.0, 2.0, 3.0}) s = rsel::update_stats(s, x);
  EXPECT_DOUBLE_EQ(s.mean, 2.0);
  EXPECT_DOUBLE_EQ(s.variance(), 1.0);
}

TEST(UpdateStats, MatchesTwoPassOnNormalDraws) {
  rsel::CounterStream stream(rsel::derive_key(11, 0), 0, 0, rsel::StreamTag::kCheck);
  std::vector<double> xs;
  SampleStats s;
  for (int i = 0; i < 1000; ++i) {
    xs.push_back(stream.normal());
    s = rsel::update_stats(s, xs.back());
  }
  const auto ref = oracle::two_pass(xs);
  EXPECT_NEAR(s.mean, ref.mean, 1e-10 * std::max(1.0, std::abs(ref.mean)));
  EXPECT_NEAR(s.variance(), ref.variance, 1e-10 * ref.variance);
  EXPECT_NEAR(s.mean, 0.0, 0.1);
  EXPECT_NEAR(s.variance(), 1.0, 0.15);
}

TEST(UpdateStats, StableForLargeOffset) {
  std::vector<double> xs;
  SampleStats s;
  for (int i = 0; i < 500; ++i) {
    xs.push_back(1e9 + (i % 7) * 0.25);
    s = rsel::update_stats(s, xs.back());
  }
  const auto ref = oracle::two_pass(xs);
  EXPECT_NEAR(s.variance(), ref.variance, 1e-8 * ref.variance);
}

TEST(SampleStats, PluginVarianceFloor) {
  SampleStats s;
  for (int i = 0; i < 3; ++i) s = rsel::update_stats(s, 4.0);
  EXPECT_EQ(s.variance(), 0.0);
  EXPECT_EQ(s.plugin_variance(), rsel::kVarianceFloor);
}

TEST(ProblemInstance, Validation) {
  EXPECT_THROW(ProblemInstance::make({1.0}, {1.0}), std::invalid_argument);
  EXPECT_THROW(ProblemInstance::make({1.0, 2.0}, {1.0}), std::invalid_argument);
  EXPECT_THROW(ProblemInstance::make({1.0, 2.0}, {1.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(ProblemInstance::make({1.0, 1.0}, {1.0, 1.0}), std::invalid_argument);
  const auto inst = ProblemInstance::make({3.0, 1.0, 2.0}, {1.0, 1.0, 1.0});
  EXPECT_EQ(inst.best, 1u);
  EXPECT_EQ(inst.size(), 3u);
}

TEST(AllocationVector, RejectsInvalidWeights) {
  EXPECT_THROW(AllocationVector({0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(AllocationVector({1.2, -0.2}), std::invalid_argument);
  EXPECT_THROW(AllocationVector({}), std::invalid_argument);
  EXPECT_NO_THROW(AllocationVector({0.25, 0.75 + 5e-10}));
  const auto w = AllocationVector::normalized({1.0, 3.0});
  EXPECT_DOUBLE_EQ(w[1], 0.75);
  EXPECT_THROW(AllocationVector::normalized({0.0, 0.0}), std::invalid_argument);
}

TEST(EstimatedBest, LowestIndexOnTies) {
  std::vector<SampleStats> stats(3);
  stats[0].mean = 2.0;
  stats[1].mean = 1.0;
  stats[2].mean = 1.0;
  EXPECT_EQ(rsel::estimated_best(stats), 1u);
}
