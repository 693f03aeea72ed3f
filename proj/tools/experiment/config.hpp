#pragma once

// Experiment configuration files (JSON).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsel/core.hpp"
#include "rsel/policies.hpp"

namespace rsel::tools {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InstanceSpec {
  // Built-in name, or "custom" when means/variances were given explicitly.
  std::string name;
  ProblemInstance instance;
};

struct BenchConfig {
  InstanceSpec instance;
  std::vector<Policy> policies{};
  std::vector<std::size_t> budgets{};
  std::size_t n0 = 3;
  std::size_t reps = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string output = "results.csv";
  std::string json_output{};  // empty: no JSON mirror
  bool record_wall_time = false;
};

struct OracleConfig {
  InstanceSpec instance;
  std::vector<std::size_t> budgets{};
  double step = 0.05;
  std::size_t reps = 100000;
  std::uint64_t seed = 1;
  std::string output = "oracle.csv";
};

struct FaclocConfig {
  std::vector<Policy> policies{};
  std::vector<std::size_t> budgets{};
  std::size_t days = 30;
  std::size_t trucks = 10;
  std::size_t n0 = 3;
  std::size_t reps = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string output = "facloc.csv";
  std::string json_output;
  bool record_wall_time = false;
  // Replications per design for the sample-mean ranking; 0 skips it.
  std::size_t ranking_reps = 0;
  std::string ranking_output = "facloc_ranking.csv";
};

struct CheckConfig {
  std::uint64_t seed = 1;
  std::size_t hessian_cases = 100;
  std::size_t identity_cases = 200;
  std::size_t sandwich_cases = 50;
  std::size_t random_cases = 200;
};

// Command-line overrides applied after the file is read.
struct Overrides {
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::string> output;
};

BenchConfig load_bench_config(const std::filesystem::path& path, const Overrides& o = {});
OracleConfig load_oracle_config(const std::filesystem::path& path, const Overrides& o = {});
FaclocConfig load_facloc_config(const std::filesystem::path& path, const Overrides& o = {});
CheckConfig load_check_config(const std::filesystem::path& path, const Overrides& o = {});

BenchConfig parse_bench_config(const std::string& text);
OracleConfig parse_oracle_config(const std::string& text);
FaclocConfig parse_facloc_config(const std::string& text);
CheckConfig parse_check_config(const std::string& text);

}  // namespace rsel::tools
