#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "rsel/normal.hpp"
#include "rsel/rng.hpp"

TEST(Normal, CdfMatchesHighPrecision) {
  for (double x = -37.5; x <= 8.5; x += 0.37) {
    const double ref = oracle::phi_cdf(x);
    EXPECT_NEAR(rsel::normal_cdf(x), ref, 1e-14) << x;
    if (ref > 1e-300) EXPECT_NEAR(rsel::normal_cdf(x) / ref, 1.0, 1e-12) << x;
  }
}

TEST(Normal, LogCdfFarTail) {
  for (double x : {-5.0, -20.0, -29.0, -31.0, -40.0}) {
    EXPECT_NEAR(rsel::log_normal_cdf(x), oracle::log_phi_cdf(x), 1e-10 * std::max(1.0, std::abs(x * x))) << x;
  }
  // Beyond double range: log Phi(x) ~ -x^2/2 - log(-x sqrt(2 pi)).
  const double x = -1e3;
  EXPECT_NEAR(rsel::log_normal_cdf(x), -0.5 * x * x - std::log(-x * std::sqrt(2 * M_PI)), 1e-5);
}

TEST(Normal, QuantileInvertsCdf) {
  for (double p : {1e-300, 1e-20, 1e-6, 0.01, 0.3, 0.5, 0.8, 0.999, 1 - 1e-12}) {
    const double z = rsel::normal_quantile(p);
    EXPECT_NEAR(oracle::phi_cdf(z) / p, 1.0, 1e-12) << p;
  }
  // Frozen AS241 values.
  EXPECT_NEAR(rsel::normal_quantile(0.975), 1.959963984540054, 1e-15);
  EXPECT_NEAR(rsel::normal_quantile(0.25), -0.6744897501960817, 1e-15);
  EXPECT_TRUE(std::isinf(rsel::normal_quantile(0.0)));
  EXPECT_TRUE(std::isnan(rsel::normal_quantile(1.5)));
}

TEST(Philox, KnownAnswerVectors) {
  using A4 = std::array<std::uint32_t, 4>;
  EXPECT_EQ(rsel::philox4x32_10({0, 0, 0, 0}, {0, 0}),
            (A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(rsel::philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                {0xffffffff, 0xffffffff}),
            (A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(rsel::philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                                {0xa4093822, 0x299f31d0}),
            (A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(CounterStream, AddressedDrawsAreReproducible) {
  auto a = rsel::CounterStream::for_sample(5, 17, 3, 9);
  auto b = rsel::CounterStream::for_sample(5, 17, 3, 9);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  auto c = rsel::CounterStream::for_sample(5, 17, 3, 10);
  auto d = rsel::CounterStream::for_sample(5, 18, 3, 9);
  auto e = rsel::CounterStream::for_sample(5, 17, 3, 9, rsel::StreamTag::kStatic);
  auto ref = rsel::CounterStream::for_sample(5, 17, 3, 9);
  const auto first = ref.next_u64();
  EXPECT_NE(c.next_u64(), first);
  EXPECT_NE(d.next_u64(), first);
  EXPECT_NE(e.next_u64(), first);
}

TEST(CounterStream, UniformOpenIntervalAndMoments) {
  rsel::CounterStream s(rsel::derive_key(1, 2), 0, 0, rsel::StreamTag::kCheck);
  double sum = 0.0, sum_sq = 0.0, exp_sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double z = s.normal();
    sum += z;
    sum_sq += z * z;
    exp_sum += s.exponential(5.0);
  }
  EXPECT_NEAR(sum / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(sum_sq / n, 1.0, 4.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(exp_sum / n, 5.0, 4.0 * 5.0 / std::sqrt(n));
}

TEST(DeriveKey, DistinctStreams) {
  std::set<std::uint64_t> keys;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (std::uint64_t r = 0; r < 50; ++r) keys.insert(rsel::derive_key(seed, r));
  }
  EXPECT_EQ(keys.size(), 1000u);
}
