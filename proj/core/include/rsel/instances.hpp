#pragma once

// Built-in benchmark instances.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsel/core.hpp"

namespace rsel::instances {

// Ten designs N(i, 36), i = 1..10.
ProblemInstance example1();
// Ten designs N(i, (11 - i)^2): the competitive designs are the noisy ones.
ProblemInstance example2();
// Fifty designs N(i, 100).
ProblemInstance example3();
// Design 1 ~ N(0, 36); the other 499 have mu ~ U(1, 16) and sigma ~ U(3, 9),
// reproducible from `seed`.
ProblemInstance example4(std::uint64_t seed);
// Three designs N(1, 36), N(2, 36), N(3, 36).
ProblemInstance three_design();

inline constexpr std::uint64_t kExample4Seed = 20190601;

// Looks up "example1".."example4" or "three". Unknown names give nullopt.
std::optional<ProblemInstance> by_name(const std::string& name,
                                       std::uint64_t example4_seed = kExample4Seed);

// Final budget used for each example's comparison column.
std::size_t final_budget(const std::string& name);

}  // namespace rsel::instances
