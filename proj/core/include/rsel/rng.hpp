#pragma once

// Counter-based random streams.
//
// Every random quantity in rsel is addressed by (seed, stream, counter words)
// rather than by position in a shared sequential generator. A macro
// replication r draws from streams keyed by derive_key(seed, r), so results do
// not depend on thread scheduling or on how replications are batched.

#include <array>
#include <cstdint>

namespace rsel {

// Philox4x32 with 10 rounds (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Key for stream `stream` under master seed `seed`.
std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) noexcept;

// Stream tags occupying the last counter word.
enum class StreamTag : std::uint32_t {
  kSampling = 0,
  kFacilityLocation = 1,
  kInstance = 2,
  kStatic = 3,
  kCheck = 4,
};

class CounterStream {
 public:
  CounterStream(std::uint64_t key, std::uint32_t word1, std::uint32_t word2,
                StreamTag tag) noexcept;

  // Stream for the `index`-th sample of `design` in macro replication
  // `replication`.
  static CounterStream for_sample(std::uint64_t seed, std::uint64_t replication,
                                  std::uint32_t design, std::uint32_t index,
                                  StreamTag tag = StreamTag::kSampling) noexcept;

  std::uint32_t next_u32() noexcept;
  std::uint64_t next_u64() noexcept;
  // Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept;
  // Standard normal by inverse CDF of one uniform.
  double normal() noexcept;
  double exponential(double mean) noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> buffer_{};
  unsigned position_ = 4;
};

}  // namespace rsel
