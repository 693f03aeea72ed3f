#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rsel/instances.hpp"

namespace rsel::tools {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  try {
    json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    return j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Rejects keys the command does not understand, so typos do not pass silently.
void check_keys(const json& j, const std::set<std::string>& allowed) {
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) throw ConfigError("config: unknown key '" + item.key() + "'");
  }
}

template <typename T>
T get(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config: bad value for '") + key + "'");
  }
}

std::size_t get_count(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_unsigned()) {
    throw ConfigError(std::string("config: '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

std::vector<Policy> get_policies(const json& j) {
  if (!j.contains("policies")) return {Policy::kEqual, Policy::kOcba, Policy::kFaa, Policy::kDaa};
  std::vector<Policy> out;
  for (const json& p : j.at("policies")) {
    if (!p.is_string()) throw ConfigError("config: policies must be strings");
    const auto parsed = parse_policy(p.get<std::string>());
    if (!parsed) throw ConfigError("config: unknown policy '" + p.get<std::string>() + "'");
    out.push_back(*parsed);
  }
  if (out.empty()) throw ConfigError("config: empty policy list");
  return out;
}

std::vector<std::size_t> get_budgets(const json& j) {
  if (!j.contains("budgets") || !j.at("budgets").is_array() || j.at("budgets").empty()) {
    throw ConfigError("config: 'budgets' must be a nonempty array");
  }
  std::vector<std::size_t> out;
  for (const json& b : j.at("budgets")) {
    if (!b.is_number_unsigned()) throw ConfigError("config: budgets must be positive integers");
    out.push_back(b.get<std::size_t>());
  }
  return out;
}

InstanceSpec get_instance(const json& j) {
  const bool named = j.contains("example");
  const bool custom = j.contains("means") || j.contains("variances");
  if (named == custom) {
    throw ConfigError("config: give either 'example' or 'means' and 'variances'");
  }
  try {
    if (named) {
      const std::string name = get<std::string>(j, "example", "");
      const auto seed = get<std::uint64_t>(j, "example4_seed", instances::kExample4Seed);
      auto inst = instances::by_name(name, seed);
      if (!inst) throw ConfigError("config: unknown example '" + name + "'");
      return {name, std::move(*inst)};
    }
    auto means = get<std::vector<double>>(j, "means", {});
    auto variances = get<std::vector<double>>(j, "variances", {});
    return {"custom", ProblemInstance::make(std::move(means), std::move(variances))};
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

unsigned get_threads(const json& j) {
  const std::size_t t = get_count(j, "threads", 1);
  if (t > 1024) throw ConfigError("config: too many threads");
  return static_cast<unsigned>(t);
}

void require_positive(std::size_t value, const char* key) {
  if (value == 0) throw ConfigError(std::string("config: '") + key + "' must be positive");
}

template <typename C>
void apply(C& c, const Overrides& o) {
  if (o.reps) c.reps = *o.reps;
  if (o.seed) c.seed = *o.seed;
  if (o.output) c.output = *o.output;
  if constexpr (requires { c.threads; }) {
    if (o.threads) c.threads = *o.threads;
  }
}

}  // namespace

BenchConfig parse_bench_config(const std::string& text) {
  const json j = parse_text(text);
  check_keys(j, {"example", "example4_seed", "means", "variances", "policies", "budgets", "n0",
                 "reps", "seed", "threads", "output", "json_output", "record_wall_time"});
  BenchConfig c{.instance = get_instance(j)};
  c.policies = get_policies(j);
  c.budgets = get_budgets(j);
  c.n0 = get_count(j, "n0", c.n0);
  c.reps = get_count(j, "reps", c.reps);
  c.seed = get<std::uint64_t>(j, "seed", c.seed);
  c.threads = get_threads(j);
  c.output = get<std::string>(j, "output", c.output);
  c.json_output = get<std::string>(j, "json_output", "");
  c.record_wall_time = get<bool>(j, "record_wall_time", false);
  if (c.n0 < 2) throw ConfigError("config: 'n0' must be at least 2");
  require_positive(c.reps, "reps");
  return c;
}

OracleConfig parse_oracle_config(const std::string& text) {
  const json j = parse_text(text);
  check_keys(j, {"example", "example4_seed", "means", "variances", "budgets", "step", "reps",
                 "seed", "output"});
  OracleConfig c{.instance = get_instance(j)};
  c.budgets = get_budgets(j);
  c.step = get<double>(j, "step", c.step);
  c.reps = get_count(j, "reps", c.reps);
  c.seed = get<std::uint64_t>(j, "seed", c.seed);
  c.output = get<std::string>(j, "output", c.output);
  require_positive(c.reps, "reps");
  if (c.instance.instance.size() > 5) {
    throw ConfigError("config: exhaustive search supports at most 5 designs");
  }
  return c;
}

FaclocConfig parse_facloc_config(const std::string& text) {
  const json j = parse_text(text);
  check_keys(j, {"policies", "budgets", "days", "trucks", "n0", "reps", "seed", "threads",
                 "output", "json_output", "record_wall_time", "ranking_reps",
                 "ranking_output"});
  FaclocConfig c;
  c.policies = get_policies(j);
  c.budgets = get_budgets(j);
  c.days = get_count(j, "days", c.days);
  c.trucks = get_count(j, "trucks", c.trucks);
  c.n0 = get_count(j, "n0", c.n0);
  c.reps = get_count(j, "reps", c.reps);
  c.seed = get<std::uint64_t>(j, "seed", c.seed);
  c.threads = get_threads(j);
  c.output = get<std::string>(j, "output", c.output);
  c.json_output = get<std::string>(j, "json_output", "");
  c.record_wall_time = get<bool>(j, "record_wall_time", false);
  c.ranking_reps = get_count(j, "ranking_reps", 0);
  c.ranking_output = get<std::string>(j, "ranking_output", c.ranking_output);
  require_positive(c.days, "days");
  require_positive(c.trucks, "trucks");
  require_positive(c.reps, "reps");
  if (c.n0 < 2) throw ConfigError("config: 'n0' must be at least 2");
  return c;
}

CheckConfig parse_check_config(const std::string& text) {
  const json j = parse_text(text);
  check_keys(j, {"seed", "hessian_cases", "identity_cases", "sandwich_cases", "random_cases"});
  CheckConfig c;
  c.seed = get<std::uint64_t>(j, "seed", c.seed);
  c.hessian_cases = get_count(j, "hessian_cases", c.hessian_cases);
  c.identity_cases = get_count(j, "identity_cases", c.identity_cases);
  c.sandwich_cases = get_count(j, "sandwich_cases", c.sandwich_cases);
  c.random_cases = get_count(j, "random_cases", c.random_cases);
  return c;
}

BenchConfig load_bench_config(const std::filesystem::path& path, const Overrides& o) {
  BenchConfig c = parse_bench_config(read_file(path));
  apply(c, o);
  return c;
}

OracleConfig load_oracle_config(const std::filesystem::path& path, const Overrides& o) {
  OracleConfig c = parse_oracle_config(read_file(path));
  apply(c, o);
  return c;
}

FaclocConfig load_facloc_config(const std::filesystem::path& path, const Overrides& o) {
  FaclocConfig c = parse_facloc_config(read_file(path));
  apply(c, o);
  return c;
}

CheckConfig load_check_config(const std::filesystem::path& path, const Overrides& o) {
  CheckConfig c = path.empty() ? CheckConfig{} : parse_check_config(read_file(path));
  if (o.seed) c.seed = *o.seed;
  return c;
}

}  // namespace rsel::tools
