#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "experiment/checks.hpp"
#include "experiment/config.hpp"
#include "experiment/runner.hpp"

namespace {

constexpr std::size_t kFullScaleReps = 100000;

int run_check(const rsel::tools::CheckConfig& config) {
  bool all = true;
  for (const auto& r : rsel::tools::run_checks(config)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases): "
              << r.detail << "\n";
    all &= r.passed;
  }
  return all ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rsel: budget allocation experiments for ranking and selection"};
  app.require_subcommand(1);

  std::string config_path;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string output;
  bool full_scale = false;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("-c,--config", config_path, "JSON configuration file");
    if (needs_config) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "override the master seed");
  };

  auto* bench = app.add_subcommand("bench", "PCS curves for sequential policies");
  auto* oracle = app.add_subcommand("oracle", "exhaustive static allocation search");
  auto* facloc = app.add_subcommand("facloc", "facility location benchmark");
  auto* check = app.add_subcommand("check", "randomized property suite");
  for (auto* sub : {bench, oracle, facloc}) {
    add_common(sub, true);
    sub->add_option("--reps", reps, "override the replication count")->check(CLI::PositiveNumber);
    sub->add_option("-o,--output", output, "override the CSV output path");
    sub->add_flag("--full-scale", full_scale, "use 100000 replications");
  }
  for (auto* sub : {bench, facloc}) {
    sub->add_option("--threads", threads, "worker threads per cell (0 = all cores)");
  }
  add_common(check, false);

  CLI11_PARSE(app, argc, argv);

  rsel::tools::Overrides o;
  if (full_scale) o.reps = kFullScaleReps;
  if (reps > 0) o.reps = reps;
  for (auto* sub : {bench, oracle, facloc, check}) {
    if (sub->count("--seed")) o.seed = seed;
  }
  for (auto* sub : {bench, facloc}) {
    if (sub->count("--threads")) o.threads = threads;
  }
  if (!output.empty()) o.output = output;

  try {
    if (*bench) return rsel::tools::bench_command(rsel::tools::load_bench_config(config_path, o), std::cerr);
    if (*oracle) return rsel::tools::oracle_command(rsel::tools::load_oracle_config(config_path, o), std::cout);
    if (*facloc) return rsel::tools::facloc_command(rsel::tools::load_facloc_config(config_path, o), std::cerr);
    if (*check) return run_check(rsel::tools::load_check_config(config_path, o));
  } catch (const rsel::tools::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
