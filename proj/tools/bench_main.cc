// bench: run the trajectory optimization benchmark, score external paths,
// and summarize record files.
//
// Exit codes: 0 success, 2 configuration error, 3 run failure.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nfg/bench.h"
#include "nfg/errors.h"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kRunFailure = 3;

void print_record(const nfg::RunRecord& r) {
  std::cout << "success: " << (r.success ? "true" : "false") << "\n"
            << "path_length: " << r.path_length << "\n";
  if (r.avg_jerk) std::cout << "avg_jerk: " << *r.avg_jerk << "\n";
  if (r.first_collision_time) {
    std::cout << "first_collision_t: " << *r.first_collision_time << "\n";
  }
}

int run_command(const std::string& config_path, const std::string& out_dir,
                std::size_t parallel) {
  nfg::BenchConfig cfg;
  try {
    cfg = nfg::load_bench_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (cfg.output_dir.empty()) cfg.output_dir = "bench_out";
    if (parallel == 0) throw nfg::ConfigError("--parallel must be at least 1");
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  try {
    const auto records = nfg::run_benchmark(cfg, parallel);
    std::cout << nfg::format_summary_table(nfg::aggregate(records));
    std::cout << "results written to " << cfg.output_dir << "\n";
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return kRunFailure;
  }
  return kOk;
}

int evaluate_command(const std::string& path, const std::string& env_name, double horizon,
                     double rate) {
  nfg::BoxEnvironment env;
  std::optional<nfg::TimeGrid> grid;
  try {
    env = nfg::environment_preset(env_name);
    grid.emplace(horizon, rate);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  const auto result = nfg::evaluate_external(path, env, *grid);
  if (!result.valid) {
    std::cerr << "invalid path: " << result.error << "\n";
    return kRunFailure;
  }
  print_record(result.record);
  return kOk;
}

int summarize_command(const std::string& records_path) {
  try {
    std::ifstream in(records_path);
    if (!in) throw nfg::ParseError("cannot open " + records_path);
    const auto records = nfg::read_records_csv(in);
    if (records.empty()) throw nfg::ParseError("no records in " + records_path);
    std::cout << nfg::format_summary_table(nfg::aggregate(records));
  } catch (const std::exception& e) {
    std::cerr << "summarize failed: " << e.what() << "\n";
    return kRunFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trajectory optimization benchmark"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::size_t parallel = 1;
  auto* run = app.add_subcommand("run", "Run every (method, seed) pair of a config");
  run->add_option("--config", config_path, "Benchmark config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  run->add_option("--parallel", parallel, "Concurrent runs")->default_val(1);

  std::string path, env_name = "narrow-passage-v1";
  double horizon = 1.0, rate = 100.0;
  auto* evaluate = app.add_subcommand("evaluate", "Score an external waypoint path");
  evaluate->add_option("--path", path, "Waypoint CSV")->required();
  evaluate->add_option("--env", env_name, "Environment preset")->default_val(env_name);
  evaluate->add_option("--horizon", horizon, "Horizon in seconds")->default_val(horizon);
  evaluate->add_option("--rate", rate, "Grid rate in Hz")->default_val(rate);

  std::string records_path;
  auto* summarize = app.add_subcommand("summarize", "Aggregate a records.csv file");
  summarize->add_option("--records", records_path, "records.csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (*run) return run_command(config_path, out_dir, parallel);
  if (*evaluate) return evaluate_command(path, env_name, horizon, rate);
  return summarize_command(records_path);
}
