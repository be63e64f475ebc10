/** Command line front end: run configs, sweep presets, verify guarantees. */

#include <cinttypes>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ebr/harness.hpp"

namespace {

void print_rows(const ebr::ExperimentResult& result) {
  std::printf("%-10s %-11s %14s %12s %9s %11s\n", result.axis_name.c_str(), "strategy",
              "mean_cost", "stderr_cost", "success", "violations");
  for (const auto& row : result.rows)
    std::printf("%-10g %-11s %14.1f %12.1f %9.3f %11.3f\n", row.axis_value,
                ebr::strategy_name(row.strategy), row.mean_cost, row.stderr_cost,
                row.success_rate, row.violation_rate);
}

int execute_and_emit(ebr::ExperimentConfig config, const std::string& out_dir) {
  // Claim the output directory before the sweep so a bad path fails in
  // milliseconds, not after a full-scale run.
  std::filesystem::create_directories(out_dir);
  const std::size_t total =
      (config.axis == ebr::SweepAxis::kNone ? 1 : config.sweep_values.size()) *
      config.strategies.size() * static_cast<std::size_t>(config.repetitions);
  const std::size_t stride = total < 20 ? total : total / 20;
  const auto result = ebr::run_experiment(config, [&](std::size_t done, std::size_t all) {
    if (done % stride == 0 || done == all) {
      std::fprintf(stderr, "\r%zu/%zu runs", done, all);
      if (done == all) std::fprintf(stderr, "\n");
    }
  });
  ebr::emit_outputs(result, out_dir);
  print_rows(result);
  std::printf("wrote %s/summary.csv and %s/runs.jsonl\n", out_dir.c_str(), out_dir.c_str());
  return 0;
}

void apply_overrides(ebr::ExperimentConfig& config, const CLI::App* cmd, std::uint64_t seed,
                     std::uint64_t reps, int jobs, const std::vector<std::string>& strategies) {
  if (cmd->count("--seed") > 0) config.base_seed = seed;
  if (cmd->count("--reps") > 0) config.repetitions = reps;
  if (cmd->count("--jobs") > 0) config.jobs = jobs;
  if (!strategies.empty()) {
    config.strategies.clear();
    for (const auto& name : strategies) {
      const auto parsed = ebr::parse_strategy(name);
      if (!parsed) throw ebr::ConfigError("unknown strategy: " + name);
      config.strategies.push_back(*parsed);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deadline-constrained best-arm identification toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", model = "spread", axis = "deadline";
  std::uint64_t seed = 1, reps = 100;
  int jobs = 0;
  bool full_scale = false;
  std::vector<std::string> strategies;
  std::vector<double> values;

  auto* run = app.add_subcommand("run", "Execute a JSON experiment config");
  run->add_option("--config", config_path, "Path to the config file")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--out-dir", out_dir, "Output directory (default out)");
  run->add_option("--seed", seed, "Override base_seed");
  run->add_option("--reps", reps, "Override repetitions");
  run->add_option("--jobs", jobs, "Override worker count (0 = hardware)");
  run->add_option("--strategies", strategies, "Override strategy list")->delimiter(',');

  auto* sweep = app.add_subcommand("sweep", "Run a built-in benchmark sweep");
  sweep->add_option("--model", model, "Model preset: spread or crowded")
      ->check(CLI::IsMember({"spread", "crowded"}));
  sweep->add_option("--axis", axis, "Sweep axis: deadline or epsilon")
      ->check(CLI::IsMember({"deadline", "epsilon"}));
  sweep->add_option("--values", values, "Override sweep grid")->delimiter(',');
  sweep->add_flag("--full-scale", full_scale, "100 arms at epsilon 0.01; plan on hours");
  sweep->add_option("--out-dir", out_dir, "Output directory (default out)");
  sweep->add_option("--seed", seed, "Override base_seed");
  sweep->add_option("--reps", reps, "Override repetitions");
  sweep->add_option("--jobs", jobs, "Override worker count (0 = hardware)");
  sweep->add_option("--strategies", strategies, "Override strategy list")->delimiter(',');

  std::uint64_t trials = 1000, grid_instances = 100, bound_runs = 200, coverage_runs = 500;
  std::uint64_t verify_seed = 12345;
  auto* verify = app.add_subcommand("verify", "Check the toolkit's guarantees mechanically");
  verify->add_option("--trials", trials, "Random schedules for the overshoot floor");
  verify->add_option("--grid-instances", grid_instances, "Schedules for the grid cross-check");
  verify->add_option("--bound-runs", bound_runs, "Racing runs for the cost ceilings");
  verify->add_option("--coverage-runs", coverage_runs, "Racing runs for interval coverage");
  verify->add_option("--seed", verify_seed, "Base seed for all checks");

  auto* presets = app.add_subcommand("presets", "Write the built-in config files");
  presets->add_option("--out-dir", out_dir, "Directory for the config files (default out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      auto config = ebr::load_config(config_path);
      apply_overrides(config, run, seed, reps, jobs, strategies);
      config.validate();
      return execute_and_emit(std::move(config), out_dir);
    }
    if (*sweep) {
      auto config = full_scale ? ebr::full_scale_preset(model) : ebr::desk_preset(model);
      if (axis == "epsilon") {
        config.axis = ebr::SweepAxis::kEpsilon;
        config.sweep_values = full_scale ? std::vector<double>{0.01, 0.02, 0.05, 0.1}
                                         : std::vector<double>{0.05, 0.1, 0.2};
      }
      if (!values.empty()) config.sweep_values = values;
      apply_overrides(config, sweep, seed, reps, jobs, strategies);
      config.validate();
      return execute_and_emit(std::move(config), out_dir);
    }
    if (*verify) {
      ebr::VerifyOptions opts;
      opts.scheduling_trials = trials;
      opts.grid_instances = grid_instances;
      opts.bound_runs = bound_runs;
      opts.coverage_runs = coverage_runs;
      opts.seed = verify_seed;
      const auto result = ebr::run_verification(opts);
      for (const auto& check : result.checks)
        std::printf("%-16s %s  %s\n", check.name.c_str(), check.pass ? "pass" : "FAIL",
                    check.detail.c_str());
      return result.pass ? 0 : 3;
    }
    if (*presets) {
      std::filesystem::create_directories(out_dir);
      const std::pair<std::string, ebr::ExperimentConfig> files[] = {
          {"desk_spread.json", ebr::desk_preset("spread")},
          {"desk_crowded.json", ebr::desk_preset("crowded")},
          {"full_scale_spread.json", ebr::full_scale_preset("spread")},
          {"full_scale_crowded.json", ebr::full_scale_preset("crowded")},
      };
      for (const auto& [name, config] : files) {
        const auto path = std::filesystem::path(out_dir) / name;
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + path.string());
        os << ebr::config_to_json(config).dump(2) << '\n';
        std::printf("wrote %s\n", path.string().c_str());
      }
      return 0;
    }
  } catch (const ebr::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
