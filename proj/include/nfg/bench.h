#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nfg/baselines.h"
#include "nfg/environment.h"
#include "nfg/kernel.h"
#include "nfg/pipeline.h"
#include "nfg/nfg_optimizer.h"
#include "nfg/score.h"
#include "nfg/time_grid.h"

namespace nfg {

using MethodConfig = std::variant<NfgConfig, StompConfig, ChompConfig, MppiConfig>;

struct MethodSpec {
  std::string label;  // unique per benchmark; names output subdirectories
  MethodConfig config;

  std::string kind() const;  // "nfg", "stomp", "chomp" or "mppi"
};

// Everything one benchmark run depends on. Built from a JSON document by
// parse_bench_config; see configs/ for the schema.
struct BenchConfig {
  std::string environment_name = "narrow-passage-v1";
  BoxEnvironment environment = environment_preset("narrow-passage-v1");
  TimeGrid grid{1.0, 100.0};
  SEKernel kernel{0.29, 0.22};
  std::optional<double> regularization;  // default_regularization(kernel) when unset
  double sigma = 1.0;                     // shared by NFG and STOMP
  ScoreConfig score;
  std::vector<MethodSpec> methods;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  std::string output_dir;

  double effective_regularization() const {
    return regularization.value_or(default_regularization(kernel));
  }
  // Shared by every method and seed: all zeros on the grid.
  Trajectory initial_trajectory() const { return Trajectory::zeros(grid); }
  void validate() const;
};

// Throws ConfigError for malformed documents, unknown keys, unknown method
// names or presets, and invalid parameters.
BenchConfig parse_bench_config(std::string_view json_text);
BenchConfig load_bench_config(const std::filesystem::path& path);

// One optimizer trial.
struct RunRecord {
  std::string method;
  std::uint64_t seed = 0;
  bool success = false;
  double runtime = 0.0;  // seconds, optimizer call only
  double path_length = 0.0;
  std::optional<double> avg_jerk;  // present iff success
  std::size_t iterations_used = 0;
  std::optional<double> first_collision_time;
};

struct RunOutput {
  RunRecord record;
  OptimizationResult result;
};

// Scores a finished trajectory: success, path length, jerk, first collision.
RunRecord score_run(std::string method, std::uint64_t seed, const Trajectory& final_trajectory,
                    const BoxEnvironment& env);

// Runs one (method, seed) trial.
RunOutput run_single(const BenchConfig& cfg, std::size_t method_index, std::uint64_t seed);

// All (method, seed) trials ordered by method then seed, run on up to
// `parallel` threads. When cfg.output_dir is set, writes records.csv,
// summary.csv and <output_dir>/<method>/<seed>/{trace,trajectory}.csv.
std::vector<RunRecord> run_benchmark(const BenchConfig& cfg, std::size_t parallel = 1);

// records.csv: method,seed,success,runtime_s,path_length,avg_jerk,
// iterations_used,first_collision_t. Empty fields for absent values.
void write_records_csv(std::span<const RunRecord> records, std::ostream& out);
std::vector<RunRecord> read_records_csv(std::istream& in);

struct SummaryStat {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single value
};

SummaryStat summarize(std::span<const double> values);

struct SummaryRow {
  std::string method;
  std::size_t runs = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;  // percent
  SummaryStat runtime;        // over all runs
  SummaryStat path_length;    // over all runs
  std::optional<SummaryStat> avg_jerk;  // over successful runs only
};

// Per-method summary, rows sorted by method name. Independent of record
// order: every statistic is computed over sorted values.
std::vector<SummaryRow> aggregate(std::span<const RunRecord> records);

void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out);
// Human-readable "mean +- std" table; "-" for methods without successes.
std::string format_summary_table(std::span<const SummaryRow> rows);

struct ExternalEvaluation {
  bool valid = false;
  std::string error;
  RunRecord record;
};

// Unwrap, merge duplicates, arc-length timing over the grid horizon,
// resample, then per-step collision validation.
RunRecord evaluate_waypoints(const WaypointPath& path, const BoxEnvironment& env,
                             const TimeGrid& grid);

// Same pipeline for a waypoint CSV file. Parse and degenerate-path
// failures come back as valid == false with a message.
ExternalEvaluation evaluate_external(const std::filesystem::path& path_file,
                                     const BoxEnvironment& env, const TimeGrid& grid);

}  // namespace nfg
