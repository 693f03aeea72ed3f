#pragma once

// Runs experiment cells and writes their result files.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "rsel/engine.hpp"
#include "rsel/oracle.hpp"

namespace rsel::tools {

struct ResultRow {
  std::string example;
  std::string policy;
  std::size_t budget = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::optional<PcsEstimate> estimate;  // empty on a failed cell
  double wall_seconds = 0.0;
  std::string error;
};

inline constexpr const char* kCsvHeader = "example,policy,budget,reps,seed,pcs,stderr,wall_seconds";

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_json(std::ostream& out, const std::vector<ResultRow>& rows);

// One row per (policy, budget), policies outer. Cells with budget <= n0 * k
// produce error rows instead of stopping the run.
std::vector<ResultRow> run_bench(const BenchConfig& config);
std::vector<ResultRow> run_facloc(const FaclocConfig& config);

struct OracleRow {
  std::string example;
  std::size_t budget = 0;
  double step = 0.0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  StaticSearchResult result;
};

std::vector<OracleRow> run_oracle(const OracleConfig& config);
void write_oracle_csv(std::ostream& out, const std::vector<OracleRow>& rows);

struct RankingRow {
  std::size_t design = 0;  // 1-based
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t reps = 0;
};

// Sample mean on-time proportion of every candidate layout.
std::vector<RankingRow> rank_facloc_designs(const FaclocConfig& config);
void write_ranking_csv(std::ostream& out, const std::vector<RankingRow>& rows);

// Full subcommands: read config, run, write every configured output file.
// Return the process exit code.
int bench_command(const BenchConfig& config, std::ostream& log);
int oracle_command(const OracleConfig& config, std::ostream& log);
int facloc_command(const FaclocConfig& config, std::ostream& log);

}  // namespace rsel::tools
