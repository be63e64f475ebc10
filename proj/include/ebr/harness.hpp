#pragma once

/**
 * Experiment harness: JSON-configured sweeps over seeded runs with
 * deterministic outputs.
 *
 * A config names a model (preset or explicit means), the racing parameters,
 * a strategy list, a repetition count, and optionally a sweep axis
 * (deadline or epsilon). run_experiment executes every (point, strategy,
 * repetition) cell with seed = base_seed + repetition, so strategies and
 * sweep points see identical reward streams. emit_outputs writes
 * summary.csv (one aggregate row per point and strategy) and runs.jsonl
 * (one object per run); both files are byte-stable across repeats and
 * worker counts, and are written via a temp file plus rename so a crash
 * never leaves a half-written artifact behind.
 */

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ebr/model.hpp"
#include "ebr/oracles.hpp"
#include "ebr/sim.hpp"
#include "ebr/trace.hpp"

namespace ebr {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SweepAxis { kNone, kDeadline, kEpsilon };

struct ExperimentConfig {
  // Model: either a named preset with an arm count, or explicit means.
  std::string preset;  // "spread" or "crowded"
  std::size_t arms = 0;
  std::vector<double> means;
  ArmKind kind = ArmKind::kBernoulli;
  double stddev = 0.0;  // Gaussian arms only
  double sigma = 0.0;   // 0 takes the model's own scale

  double epsilon = 0.1;
  double delta = 0.05;
  int deadline = 1;
  std::uint64_t pull_cap = 0;  // round-robin racer only; 0 takes its default

  std::vector<StrategyKind> strategies;
  std::uint64_t repetitions = 1;
  Seed base_seed = 1;
  SweepAxis axis = SweepAxis::kNone;
  std::vector<double> sweep_values;
  int jobs = 1;  // 0 takes the hardware thread count

  void validate() const {
    const bool has_preset = !preset.empty();
    if (has_preset == !means.empty())
      throw ConfigError("config needs exactly one of preset or means");
    if (has_preset) {
      if (preset != "spread" && preset != "crowded")
        throw ConfigError("unknown preset: " + preset);
      if (arms < 2) throw ConfigError("preset needs arms >= 2");
      if (kind != ArmKind::kBernoulli || stddev != 0.0)
        throw ConfigError("presets fix the arm kind; kind and stddev only apply to means");
    } else {
      if (means.size() < 2) throw ConfigError("means needs at least two entries");
      if (kind == ArmKind::kGaussian) {
        if (!(stddev > 0.0)) throw ConfigError("gaussian arms need stddev > 0");
      } else if (stddev != 0.0) {
        throw ConfigError("stddev only applies to gaussian arms");
      }
    }
    if (!(sigma >= 0.0)) throw ConfigError("sigma must be >= 0");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon outside (0,1)");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta outside (0,1)");
    if (deadline < 1) throw ConfigError("deadline must be >= 1");
    if (strategies.empty()) throw ConfigError("strategies must be nonempty");
    for (std::size_t i = 0; i < strategies.size(); ++i)
      for (std::size_t k = i + 1; k < strategies.size(); ++k)
        if (strategies[i] == strategies[k]) throw ConfigError("duplicate strategy");
    if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
    if (jobs < 0) throw ConfigError("jobs must be >= 0");
    if (axis == SweepAxis::kNone) {
      if (!sweep_values.empty()) throw ConfigError("sweep_values given without sweep_axis");
      return;
    }
    if (sweep_values.empty()) throw ConfigError("sweep_axis given without sweep_values");
    for (std::size_t k = 0; k < sweep_values.size(); ++k) {
      const double v = sweep_values[k];
      if (k > 0 && !(v > sweep_values[k - 1]))
        throw ConfigError("sweep_values must be strictly increasing");
      if (axis == SweepAxis::kDeadline) {
        if (!(v >= 1.0) || v != std::floor(v) || v > 1.0e6)
          throw ConfigError("deadline sweep values must be integers >= 1");
      } else if (!(v > 0.0 && v < 1.0)) {
        throw ConfigError("epsilon sweep values must lie in (0,1)");
      }
    }
  }
};

inline BanditModel make_model(const ExperimentConfig& config) {
  config.validate();
  std::vector<ArmDistribution> arms;
  if (config.preset == "spread") return ebr::spread_model(config.arms);
  if (config.preset == "crowded") return ebr::crowded_model(config.arms);
  arms.reserve(config.means.size());
  for (double m : config.means)
    arms.push_back(config.kind == ArmKind::kGaussian
                       ? ArmDistribution::gaussian(m, config.stddev)
                       : ArmDistribution::bernoulli(m));
  // sigma == 0 defers to the model's own scale; BanditModel rejects a
  // sigma below any arm's sub-Gaussian proxy.
  return config.sigma > 0.0 ? BanditModel(std::move(arms), config.sigma)
                            : BanditModel(std::move(arms));
}

namespace detail {

inline const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = {
      "arms",       "base_seed", "deadline",   "delta",        "epsilon", "jobs",
      "kind",       "means",     "preset",     "pull_cap",     "repetitions",
      "sigma",      "stddev",    "strategies", "sweep_axis",   "sweep_values"};
  return keys;
}

template <class T>
T config_number(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw ConfigError(std::string(key) + " must be an integer");
    if (std::is_unsigned_v<T> && v.is_number_integer() && !v.is_number_unsigned())
      throw ConfigError(std::string(key) + " must be >= 0");
  } else {
    if (!v.is_number()) throw ConfigError(std::string(key) + " must be a number");
  }
  return v.template get<T>();
}

}  // namespace detail

inline ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& item : j.items()) {
    const auto& keys = detail::config_keys();
    if (std::find(keys.begin(), keys.end(), item.key()) == keys.end())
      throw ConfigError("unknown config key: " + item.key());
  }

  ExperimentConfig c;
  if (j.contains("preset")) {
    if (!j.at("preset").is_string()) throw ConfigError("preset must be a string");
    c.preset = j.at("preset").get<std::string>();
  }
  if (j.contains("arms")) c.arms = detail::config_number<std::size_t>(j, "arms");
  if (j.contains("means")) {
    if (!j.at("means").is_array()) throw ConfigError("means must be an array of numbers");
    for (const auto& v : j.at("means")) {
      if (!v.is_number()) throw ConfigError("means must be an array of numbers");
      c.means.push_back(v.get<double>());
    }
  }
  if (j.contains("kind")) {
    if (!j.at("kind").is_string()) throw ConfigError("kind must be a string");
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "bernoulli")
      c.kind = ArmKind::kBernoulli;
    else if (kind == "gaussian")
      c.kind = ArmKind::kGaussian;
    else
      throw ConfigError("kind must be bernoulli or gaussian");
  }
  if (j.contains("stddev")) c.stddev = detail::config_number<double>(j, "stddev");
  if (j.contains("sigma")) c.sigma = detail::config_number<double>(j, "sigma");
  if (j.contains("epsilon")) c.epsilon = detail::config_number<double>(j, "epsilon");
  if (j.contains("delta")) c.delta = detail::config_number<double>(j, "delta");
  if (j.contains("deadline")) c.deadline = detail::config_number<int>(j, "deadline");
  if (j.contains("pull_cap")) c.pull_cap = detail::config_number<std::uint64_t>(j, "pull_cap");
  if (j.contains("strategies")) {
    if (!j.at("strategies").is_array()) throw ConfigError("strategies must be an array");
    for (const auto& v : j.at("strategies")) {
      if (!v.is_string()) throw ConfigError("strategies must be an array of names");
      const auto parsed = parse_strategy(v.get<std::string>());
      if (!parsed) throw ConfigError("unknown strategy: " + v.get<std::string>());
      c.strategies.push_back(*parsed);
    }
  }
  if (j.contains("repetitions"))
    c.repetitions = detail::config_number<std::uint64_t>(j, "repetitions");
  if (j.contains("base_seed")) c.base_seed = detail::config_number<std::uint64_t>(j, "base_seed");
  if (j.contains("sweep_axis")) {
    if (!j.at("sweep_axis").is_string()) throw ConfigError("sweep_axis must be a string");
    const auto axis = j.at("sweep_axis").get<std::string>();
    if (axis == "deadline")
      c.axis = SweepAxis::kDeadline;
    else if (axis == "epsilon")
      c.axis = SweepAxis::kEpsilon;
    else
      throw ConfigError("sweep_axis must be deadline or epsilon");
  }
  if (j.contains("sweep_values")) {
    if (!j.at("sweep_values").is_array())
      throw ConfigError("sweep_values must be an array of numbers");
    for (const auto& v : j.at("sweep_values")) {
      if (!v.is_number()) throw ConfigError("sweep_values must be an array of numbers");
      c.sweep_values.push_back(v.get<double>());
    }
  }
  if (j.contains("jobs")) c.jobs = detail::config_number<int>(j, "jobs");
  c.validate();
  return c;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open config file: " + path.string());
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

inline nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  if (!c.preset.empty()) {
    j["preset"] = c.preset;
    j["arms"] = c.arms;
  } else {
    j["means"] = c.means;
    j["kind"] = c.kind == ArmKind::kGaussian ? "gaussian" : "bernoulli";
    if (c.kind == ArmKind::kGaussian) j["stddev"] = c.stddev;
  }
  if (c.sigma > 0.0) j["sigma"] = c.sigma;
  j["epsilon"] = c.epsilon;
  j["delta"] = c.delta;
  j["deadline"] = c.deadline;
  if (c.pull_cap > 0) j["pull_cap"] = c.pull_cap;
  std::vector<std::string> names;
  names.reserve(c.strategies.size());
  for (StrategyKind s : c.strategies) names.emplace_back(strategy_name(s));
  j["strategies"] = names;
  j["repetitions"] = c.repetitions;
  j["base_seed"] = c.base_seed;
  if (c.axis != SweepAxis::kNone) {
    j["sweep_axis"] = c.axis == SweepAxis::kDeadline ? "deadline" : "epsilon";
    j["sweep_values"] = c.sweep_values;
  }
  j["jobs"] = c.jobs;
  return j;
}

struct SummaryRow {
  double axis_value = 0.0;
  StrategyKind strategy = StrategyKind::kEbr;
  double mean_cost = 0.0;
  double stderr_cost = 0.0;
  double success_rate = 0.0;
  double violation_rate = 0.0;  // batch racer cost-bound misses; 0 otherwise
};

struct RunEntry {
  std::size_t point = 0;
  double axis_value = 0.0;
  StrategyKind strategy = StrategyKind::kEbr;
  double epsilon = 0.0;
  int deadline = 1;
  Seed seed = 0;
  RunTrace trace;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::string axis_name;
  std::vector<double> axis_values;
  std::size_t arm_count = 0;
  double sigma = 0.0;
  std::vector<RunEntry> runs;    // point-major, then strategy, then repetition
  std::vector<SummaryRow> rows;  // point-major, then strategy
};

namespace detail {

/**
 * Runs fn(0..count-1) on `jobs` workers (0 = hardware threads). Results must
 * be written to index-addressed slots; the first exception aborts the rest.
 */
template <class Fn>
inline void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  std::size_t workers =
      jobs > 0 ? static_cast<std::size_t>(jobs)
               : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) break;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

inline ExperimentResult run_experiment(
    const ExperimentConfig& config,
    const std::function<void(std::size_t, std::size_t)>& progress = {}) {
  config.validate();
  const BanditModel model = make_model(config);

  ExperimentResult result;
  result.config = config;
  result.axis_name = config.axis == SweepAxis::kEpsilon ? "epsilon" : "deadline";
  result.axis_values = config.axis == SweepAxis::kNone
                           ? std::vector<double>{static_cast<double>(config.deadline)}
                           : config.sweep_values;
  result.arm_count = model.size();
  result.sigma = config.sigma > 0.0 ? config.sigma : model.sigma();

  const std::size_t points = result.axis_values.size();
  const std::size_t n_strategies = config.strategies.size();
  const std::size_t reps = static_cast<std::size_t>(config.repetitions);
  result.runs.resize(points * n_strategies * reps);
  for (std::size_t p = 0; p < points; ++p) {
    const double value = result.axis_values[p];
    for (std::size_t s = 0; s < n_strategies; ++s) {
      for (std::size_t r = 0; r < reps; ++r) {
        auto& entry = result.runs[(p * n_strategies + s) * reps + r];
        entry.point = p;
        entry.axis_value = value;
        entry.strategy = config.strategies[s];
        entry.epsilon = config.axis == SweepAxis::kEpsilon ? value : config.epsilon;
        entry.deadline =
            config.axis == SweepAxis::kDeadline ? static_cast<int>(value) : config.deadline;
        entry.seed = config.base_seed + r;
      }
    }
  }

  std::mutex progress_mutex;
  std::size_t done = 0;
  detail::parallel_for(result.runs.size(), config.jobs, [&](std::size_t idx) {
    auto& entry = result.runs[idx];
    RunParams params;
    params.strategy = entry.strategy;
    params.epsilon = entry.epsilon;
    params.delta = config.delta;
    params.deadline = entry.deadline;
    params.sigma = result.sigma;
    params.pull_cap = config.pull_cap;
    entry.trace = execute_run(model, params, entry.seed);
    if (progress) {
      std::lock_guard<std::mutex> lock(progress_mutex);
      progress(++done, result.runs.size());
    }
  });

  result.rows.reserve(points * n_strategies);
  for (std::size_t p = 0; p < points; ++p) {
    const double point_epsilon =
        config.axis == SweepAxis::kEpsilon ? result.axis_values[p] : config.epsilon;
    const int point_deadline = config.axis == SweepAxis::kDeadline
                                   ? static_cast<int>(result.axis_values[p])
                                   : config.deadline;
    const auto ceilings =
        cost_bound_values(model, point_epsilon, config.delta, point_deadline, result.sigma);
    for (std::size_t s = 0; s < n_strategies; ++s) {
      SummaryRow row;
      row.axis_value = result.axis_values[p];
      row.strategy = config.strategies[s];
      const std::size_t base = (p * n_strategies + s) * reps;
      double cost_sum = 0.0;
      std::uint64_t successes = 0, violations = 0;
      for (std::size_t r = 0; r < reps; ++r) {
        const auto& entry = result.runs[base + r];
        cost_sum += static_cast<double>(entry.trace.total_cost);
        successes += entry.trace.success ? 1 : 0;
        if (row.strategy == StrategyKind::kEbr && entry.trace.error.empty())
          violations += ceilings.any_exceeded(entry.trace.total_cost) ? 1 : 0;
      }
      row.mean_cost = cost_sum / static_cast<double>(reps);
      if (reps > 1) {
        double sq = 0.0;
        for (std::size_t r = 0; r < reps; ++r) {
          const double d =
              static_cast<double>(result.runs[base + r].trace.total_cost) - row.mean_cost;
          sq += d * d;
        }
        row.stderr_cost = std::sqrt(sq / static_cast<double>(reps - 1) /
                                    static_cast<double>(reps));
      }
      row.success_rate = static_cast<double>(successes) / static_cast<double>(reps);
      row.violation_rate = static_cast<double>(violations) / static_cast<double>(reps);
      result.rows.push_back(row);
    }
  }
  return result;
}

/** Shortest decimal string that round-trips the value. */
inline std::string format_double(double v) {
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

namespace detail {

inline void write_atomic(const std::filesystem::path& final_path, const std::string& content) {
  const std::filesystem::path tmp = final_path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string());
    os << content;
    os.flush();
    if (!os) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, final_path);
}

}  // namespace detail

inline void emit_outputs(const ExperimentResult& result, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  std::string csv = "axis,strategy,mean_cost,stderr_cost,success_rate,violation_rate\n";
  for (const auto& row : result.rows) {
    csv += format_double(row.axis_value);
    csv += ',';
    csv += strategy_name(row.strategy);
    csv += ',';
    csv += format_double(row.mean_cost);
    csv += ',';
    csv += format_double(row.stderr_cost);
    csv += ',';
    csv += format_double(row.success_rate);
    csv += ',';
    csv += format_double(row.violation_rate);
    csv += '\n';
  }
  detail::write_atomic(out_dir / "summary.csv", csv);

  std::string jsonl;
  for (const auto& entry : result.runs) {
    nlohmann::json j;
    j["axis"] = entry.axis_value;
    j["capped"] = entry.trace.capped;
    j["config"] = {{"deadline", entry.deadline},
                   {"delta", result.config.delta},
                   {"epsilon", entry.epsilon},
                   {"n", result.arm_count},
                   {"sigma", result.sigma},
                   {"strategy", strategy_name(entry.strategy)}};
    std::vector<std::uint64_t> cumulative;
    cumulative.reserve(entry.trace.rounds.size());
    for (const auto& record : entry.trace.rounds) cumulative.push_back(record.cumulative_cost);
    j["cumulative_costs"] = cumulative;
    j["recommended"] = entry.trace.recommendation.arm;
    j["rounds"] = entry.trace.recommendation.round_stopped;
    j["seed"] = entry.seed;
    j["success"] = entry.trace.success;
    j["total_cost"] = entry.trace.total_cost;
    if (!entry.trace.error.empty()) j["error"] = entry.trace.error;
    jsonl += j.dump();
    jsonl += '\n';
  }
  detail::write_atomic(out_dir / "runs.jsonl", jsonl);
}

/** Desk-scale benchmark: 20 arms, deadline sweep, all strategies. */
inline ExperimentConfig desk_preset(const std::string& model_preset = "spread") {
  ExperimentConfig c;
  c.preset = model_preset;
  c.arms = 20;
  c.epsilon = 0.05;
  c.delta = 0.01;
  c.deadline = 5;
  c.strategies.assign(std::begin(kAllStrategies), std::end(kAllStrategies));
  c.repetitions = 100;
  c.base_seed = 1;
  c.axis = SweepAxis::kDeadline;
  c.sweep_values = {1, 2, 3, 5, 10, 15};
  c.jobs = 0;
  return c;
}

/** Benchmark at published scale: 100 arms, epsilon 0.01, every deadline up
 * to 15. Plan on hours; the passive points alone draw ~10^8 samples each. */
inline ExperimentConfig full_scale_preset(const std::string& model_preset = "spread") {
  ExperimentConfig c = desk_preset(model_preset);
  c.arms = 100;
  c.epsilon = 0.01;
  c.deadline = 15;  // the epsilon-sweep variant holds this fixed
  c.sweep_values.clear();
  for (int t = 1; t <= 15; ++t) c.sweep_values.push_back(t);
  return c;
}

struct VerifyOptions {
  std::uint64_t scheduling_trials = 1000;
  int scheduling_t_lo = 2;
  int scheduling_t_hi = 10;
  std::uint64_t grid_instances = 100;
  std::size_t grid_points = 10000;
  std::uint64_t bound_runs = 200;
  std::uint64_t coverage_runs = 500;
  Seed seed = 12345;
};

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyResult {
  std::vector<VerifyCheck> checks;
  bool pass = true;
};

/** Runs every oracle at the requested sizes and reports pass/fail lines. */
inline VerifyResult run_verification(const VerifyOptions& opts = {}) {
  VerifyResult result;
  auto add = [&](std::string name, bool pass, std::string detail) {
    result.checks.push_back({std::move(name), pass, std::move(detail)});
    result.pass = result.pass && pass;
  };

  {
    const auto report = verify_scheduling_lemma(opts.scheduling_trials, opts.scheduling_t_lo,
                                                opts.scheduling_t_hi, opts.seed);
    add("scheduling_floor", report.violations == 0,
        std::to_string(report.trials) + " schedules, " + std::to_string(report.violations) +
            " below the floor, min gap/floor " + format_double(report.worst_slack));
  }

  {
    // The geometric grid resolves ratios to a factor of (target/base)^(1/G),
    // so the exact supremum may exceed the grid estimate by that much.
    std::uint64_t mismatches = 0;
    double worst_ratio = 1.0;
    for (std::uint64_t k = 0; k < opts.grid_instances; ++k) {
      const auto inst = detail::sample_schedule(stream_key(opts.seed ^ kGolden, k),
                                                opts.scheduling_t_lo, opts.scheduling_t_hi);
      const double exact = scheduling_gap(inst);
      const double grid = scheduling_gap_on_grid(inst, opts.grid_points);
      const double resolution =
          std::pow(inst.target / inst.base, 1.0 / static_cast<double>(opts.grid_points));
      worst_ratio = std::max(worst_ratio, exact / grid);
      if (grid > exact * (1.0 + 1e-12) || exact > grid * resolution * (1.0 + 1e-9))
        mismatches += 1;
    }
    add("scheduling_grid", mismatches == 0,
        std::to_string(opts.grid_instances) + " instances, " + std::to_string(mismatches) +
            " outside grid resolution, worst exact/grid " + format_double(worst_ratio));
  }

  {
    const auto model = spread_model(20);
    const double epsilon = 0.05, delta = 0.05;
    const int deadline = 5;
    std::vector<RunTrace> traces;
    traces.reserve(opts.bound_runs);
    RunParams params;
    params.strategy = StrategyKind::kEbr;
    params.epsilon = epsilon;
    params.delta = delta;
    params.deadline = deadline;
    for (std::uint64_t r = 0; r < opts.bound_runs; ++r)
      traces.push_back(execute_run(model, params, opts.seed + r));
    const auto reports = check_bounds(traces, model, epsilon, delta, deadline, model.sigma());
    bool pass = true;
    std::string detail;
    for (const auto& report : reports) {
      pass = pass && report.rate() <= delta;
      if (!detail.empty()) detail += ", ";
      detail += report.bound + " " + format_double(report.rate());
    }
    add("cost_bounds", pass, detail + " (allowed " + format_double(delta) + ")");
  }

  {
    std::vector<ArmDistribution> arms;
    for (double m : {0.9, 0.75, 0.6, 0.45, 0.3}) arms.push_back(ArmDistribution::bernoulli(m));
    const BanditModel model(std::move(arms));
    const double delta = 0.05;
    const auto report = check_coverage(model, 0.1, delta, 5, opts.coverage_runs, opts.seed);
    add("coverage", report.rate() <= delta,
        std::to_string(report.checked) + " runs, miss rate " + format_double(report.rate()) +
            " (allowed " + format_double(delta) + ")");
  }

  return result;
}

}  // namespace ebr
