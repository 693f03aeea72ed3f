#include "runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "rsel/facloc.hpp"

namespace rsel::tools {

namespace {

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<ResultRow> run_cells(const std::string& example, const SamplingSource& source,
                                 std::size_t true_best, const std::vector<Policy>& policies,
                                 const std::vector<std::size_t>& budgets, std::size_t n0,
                                 std::size_t reps, std::uint64_t seed, unsigned threads,
                                 bool record_wall_time) {
  std::vector<ResultRow> rows;
  for (Policy policy : policies) {
    for (std::size_t budget : budgets) {
      ResultRow row{example, std::string(policy_name(policy)), budget, reps, seed, {}, 0.0, {}};
      if (budget <= n0 * source.size()) {
        row.error = "budget must exceed n0 * k = " + std::to_string(n0 * source.size());
        rows.push_back(std::move(row));
        continue;
      }
      const Stopwatch clock;
      PcsOptions options{n0, budget, reps, seed, threads};
      try {
        row.estimate = estimate_pcs(source, true_best, policy, options);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      if (record_wall_time) row.wall_seconds = clock.seconds();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

template <typename Write>
bool write_file(const std::string& path, std::ostream& log, Write&& write) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    log << "error: cannot write " << path << "\n";
    return false;
  }
  write(out);
  return static_cast<bool>(out);
}

bool report_errors(const std::vector<ResultRow>& rows, std::ostream& log) {
  bool any = false;
  for (const ResultRow& r : rows) {
    if (r.error.empty()) continue;
    any = true;
    log << "cell " << r.example << "/" << r.policy << "/" << r.budget << ": " << r.error << "\n";
  }
  return any;
}

std::vector<facloc::WarehouseDesign> facloc_designs(const FaclocConfig& config) {
  auto designs = facloc::standard_designs();
  for (auto& d : designs) d.trucks_per_warehouse = config.trucks;
  return designs;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << "\n";
  for (const ResultRow& r : rows) {
    out << r.example << ',' << r.policy << ',' << r.budget << ',' << r.reps << ',' << r.seed
        << ',';
    if (r.estimate) {
      out << fixed(r.estimate->pcs, 6) << ',' << fixed(r.estimate->std_error, 6);
    } else {
      out << "NA,NA";
    }
    out << ',' << fixed(r.wall_seconds, 3) << "\n";
  }
}

void write_json(std::ostream& out, const std::vector<ResultRow>& rows) {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const ResultRow& r : rows) {
    nlohmann::ordered_json j;
    j["example"] = r.example;
    j["policy"] = r.policy;
    j["budget"] = r.budget;
    j["reps"] = r.reps;
    j["seed"] = r.seed;
    if (r.estimate) {
      j["pcs"] = r.estimate->pcs;
      j["stderr"] = r.estimate->std_error;
    } else {
      j["pcs"] = nullptr;
      j["stderr"] = nullptr;
      j["error"] = r.error;
    }
    j["wall_seconds"] = r.wall_seconds;
    list.push_back(std::move(j));
  }
  out << list.dump(2) << "\n";
}

std::vector<ResultRow> run_bench(const BenchConfig& c) {
  const GaussianSource source(c.instance.instance);
  return run_cells(c.instance.name, source, c.instance.instance.best, c.policies, c.budgets,
                   c.n0, c.reps, c.seed, c.threads, c.record_wall_time);
}

std::vector<ResultRow> run_facloc(const FaclocConfig& c) {
  const facloc::FacilityLocationSource source(facloc_designs(c), c.days);
  // The first layout is the best one.
  return run_cells("facloc", source, 0, c.policies, c.budgets, c.n0, c.reps, c.seed, c.threads,
                   c.record_wall_time);
}

std::vector<OracleRow> run_oracle(const OracleConfig& c) {
  std::vector<OracleRow> rows;
  for (std::size_t budget : c.budgets) {
    StaticPcsOptions options{c.reps, c.seed};
    rows.push_back({c.instance.name, budget, c.step, c.reps, c.seed,
                    optimal_static_allocation(c.instance.instance, budget, c.step, options)});
  }
  return rows;
}

void write_oracle_csv(std::ostream& out, const std::vector<OracleRow>& rows) {
  out << "example,budget,step,reps,seed,allocation,pcs,stderr,points\n";
  for (const OracleRow& r : rows) {
    out << r.example << ',' << r.budget << ',' << fixed(r.step, 4) << ',' << r.reps << ','
        << r.seed << ',';
    const auto w = r.result.allocation.weights();
    for (std::size_t i = 0; i < w.size(); ++i) out << (i ? ";" : "") << fixed(w[i], 4);
    out << ',' << fixed(r.result.pcs.pcs, 6) << ',' << fixed(r.result.pcs.std_error, 6) << ','
        << r.result.points_evaluated << "\n";
  }
}

std::vector<RankingRow> rank_facloc_designs(const FaclocConfig& c) {
  const auto designs = facloc_designs(c);
  std::vector<RankingRow> rows;
  for (std::size_t d = 0; d < designs.size(); ++d) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t r = 0; r < c.ranking_reps; ++r) {
      CounterStream stream = CounterStream::for_sample(c.seed, r, static_cast<std::uint32_t>(d),
                                                       0, StreamTag::kFacilityLocation);
      const double v = facloc::simulate_replication(designs[d], c.days, stream);
      sum += v;
      sum_sq += v * v;
    }
    const double n = static_cast<double>(c.ranking_reps);
    const double mean = sum / n;
    const double var = c.ranking_reps > 1 ? std::max(sum_sq - n * mean * mean, 0.0) / (n - 1) : 0.0;
    rows.push_back({d + 1, mean, std::sqrt(var / n), c.ranking_reps});
  }
  return rows;
}

void write_ranking_csv(std::ostream& out, const std::vector<RankingRow>& rows) {
  out << "design,reps,mean,stderr\n";
  for (const RankingRow& r : rows) {
    out << r.design << ',' << r.reps << ',' << fixed(r.mean, 6) << ',' << fixed(r.std_error, 6)
        << "\n";
  }
}

int bench_command(const BenchConfig& c, std::ostream& log) {
  const auto rows = run_bench(c);
  const bool failed_cells = report_errors(rows, log);
  bool ok = write_file(c.output, log, [&](std::ostream& o) { write_csv(o, rows); });
  if (!c.json_output.empty()) {
    ok &= write_file(c.json_output, log, [&](std::ostream& o) { write_json(o, rows); });
  }
  if (!ok) return 1;
  return failed_cells ? 3 : 0;
}

int oracle_command(const OracleConfig& c, std::ostream& log) {
  const auto rows = run_oracle(c);
  for (const OracleRow& r : rows) {
    log << "T=" << r.budget << " best grid allocation (";
    const auto w = r.result.allocation.weights();
    for (std::size_t i = 0; i < w.size(); ++i) log << (i ? ", " : "") << fixed(w[i], 3);
    log << ") pcs " << fixed(r.result.pcs.pcs, 4) << "\n";
  }
  return write_file(c.output, log, [&](std::ostream& o) { write_oracle_csv(o, rows); }) ? 0 : 1;
}

int facloc_command(const FaclocConfig& c, std::ostream& log) {
  bool ok = true;
  if (c.ranking_reps > 0) {
    const auto ranking = rank_facloc_designs(c);
    ok &= write_file(c.ranking_output, log, [&](std::ostream& o) { write_ranking_csv(o, ranking); });
  }
  const auto rows = run_facloc(c);
  const bool failed_cells = report_errors(rows, log);
  ok &= write_file(c.output, log, [&](std::ostream& o) { write_csv(o, rows); });
  if (!c.json_output.empty()) {
    ok &= write_file(c.json_output, log, [&](std::ostream& o) { write_json(o, rows); });
  }
  if (!ok) return 1;
  return failed_cells ? 3 : 0;
}

}  // namespace rsel::tools
