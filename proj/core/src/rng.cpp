#include "rsel/rng.hpp"

#include <cmath>

#include "rsel/normal.hpp"

namespace rsel {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) noexcept {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(mix64(seed) ^ (stream * 0xD1342543DE82EF95ull + 0x2545F4914F6CDD1Dull));
}

CounterStream::CounterStream(std::uint64_t key, std::uint32_t word1,
                             std::uint32_t word2, StreamTag tag) noexcept
    : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)},
      counter_{0u, word1, word2, static_cast<std::uint32_t>(tag)} {}

CounterStream CounterStream::for_sample(std::uint64_t seed, std::uint64_t replication,
                                        std::uint32_t design, std::uint32_t index,
                                        StreamTag tag) noexcept {
  return CounterStream(derive_key(seed, replication), index, design, tag);
}

void CounterStream::refill() noexcept {
  buffer_ = philox4x32_10(counter_, key_);
  ++counter_[0];
  position_ = 0;
}

std::uint32_t CounterStream::next_u32() noexcept {
  if (position_ >= 4) refill();
  return buffer_[position_++];
}

std::uint64_t CounterStream::next_u64() noexcept {
  const std::uint64_t hi = next_u32();
  const std::uint64_t lo = next_u32();
  return (hi << 32) | lo;
}

double CounterStream::uniform() noexcept {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(next_u64() >> 11) + 0.5) * kScale;
}

double CounterStream::normal() noexcept { return normal_quantile(uniform()); }

double CounterStream::exponential(double mean) noexcept {
  return -mean * std::log(uniform());
}

}  // namespace rsel
