#include "rsel/instances.hpp"

#include <stdexcept>

#include "rsel/rng.hpp"

namespace rsel::instances {

ProblemInstance example1() {
  std::vector<double> means, variances;
  for (int i = 1; i <= 10; ++i) {
    means.push_back(i);
    variances.push_back(36.0);
  }
  return ProblemInstance::make(std::move(means), std::move(variances));
}

ProblemInstance example2() {
  std::vector<double> means, variances;
  for (int i = 1; i <= 10; ++i) {
    means.push_back(i);
    variances.push_back(static_cast<double>((11 - i) * (11 - i)));
  }
  return ProblemInstance::make(std::move(means), std::move(variances));
}

ProblemInstance example3() {
  std::vector<double> means, variances;
  for (int i = 1; i <= 50; ++i) {
    means.push_back(i);
    variances.push_back(100.0);
  }
  return ProblemInstance::make(std::move(means), std::move(variances));
}

ProblemInstance example4(std::uint64_t seed) {
  std::vector<double> means{0.0};
  std::vector<double> variances{36.0};
  CounterStream stream(derive_key(seed, 0), 0, 0, StreamTag::kInstance);
  for (int i = 2; i <= 500; ++i) {
    const double mu = 1.0 + 15.0 * stream.uniform();
    const double sigma = 3.0 + 6.0 * stream.uniform();
    means.push_back(mu);
    variances.push_back(sigma * sigma);
  }
  return ProblemInstance::make(std::move(means), std::move(variances));
}

ProblemInstance three_design() {
  return ProblemInstance::make({1.0, 2.0, 3.0}, {36.0, 36.0, 36.0});
}

std::optional<ProblemInstance> by_name(const std::string& name, std::uint64_t example4_seed) {
  if (name == "example1") return example1();
  if (name == "example2") return example2();
  if (name == "example3") return example3();
  if (name == "example4") return example4(example4_seed);
  if (name == "three") return three_design();
  return std::nullopt;
}

std::size_t final_budget(const std::string& name) {
  if (name == "example1") return 1000;
  if (name == "example2") return 3000;
  if (name == "example3") return 5000;
  if (name == "example4") return 80000;
  throw std::invalid_argument("final_budget: unknown example " + name);
}

}  // namespace rsel::instances
