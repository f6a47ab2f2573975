#include "nfg/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "nfg/csv.h"
#include "nfg/errors.h"
#include "nfg/pipeline.h"
#include "nfg/sampler.h"
#include "parallel.h"

namespace nfg {
namespace {

using Clock = std::chrono::steady_clock;

std::shared_ptr<const CovarianceFactor> benchmark_factor(const BenchConfig& cfg) {
  return std::make_shared<const CovarianceFactor>(
      factorize(kernel_matrix(cfg.grid, cfg.kernel), cfg.effective_regularization()));
}

RunOutput run_with_factor(const BenchConfig& cfg, const MethodSpec& method, std::uint64_t seed,
                          const std::shared_ptr<const CovarianceFactor>& factor) {
  const Trajectory init = cfg.initial_trajectory();
  const auto& env = cfg.environment;
  const PerturbationSampler sampler(factor, cfg.sigma, seed);

  const auto start = Clock::now();
  OptimizationResult result = std::visit(
      [&](const auto& m) -> OptimizationResult {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NfgConfig>) {
          return optimize(init, env, cfg.score, sampler, m);
        } else if constexpr (std::is_same_v<T, StompConfig>) {
          return stomp_optimize(init, env, cfg.score, m, sampler);
        } else if constexpr (std::is_same_v<T, ChompConfig>) {
          return chomp_optimize(init, env, m, seed);
        } else {
          return mppi_optimize(init, env, m, seed, cfg.score);
        }
      },
      method.config);
  const double runtime = std::chrono::duration<double>(Clock::now() - start).count();

  RunRecord record = score_run(method.label, seed, result.trajectory, env);
  record.runtime = runtime;
  record.iterations_used = result.iterations_used;
  return {std::move(record), std::move(result)};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string optional_field(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::optional<double> parse_optional(const std::string& field) {
  if (field.empty()) return std::nullopt;
  return parse_double(field);
}

std::string format_stat(const SummaryStat& s) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.2f +- %.2f", s.mean, s.stddev);
  return buf;
}

const char* kRecordsHeader =
    "method,seed,success,runtime_s,path_length,avg_jerk,iterations_used,first_collision_t";

}  // namespace

RunRecord score_run(std::string method, std::uint64_t seed, const Trajectory& final_trajectory,
                    const BoxEnvironment& env) {
  RunRecord r;
  r.method = std::move(method);
  r.seed = seed;
  r.path_length = path_length(final_trajectory);
  const auto hit = first_collision(env, final_trajectory);
  r.success = !hit.has_value();
  if (r.success) {
    r.avg_jerk = average_abs_jerk(final_trajectory);
  } else {
    r.first_collision_time = final_trajectory.grid().time(*hit);
  }
  return r;
}

RunOutput run_single(const BenchConfig& cfg, std::size_t method_index, std::uint64_t seed) {
  if (method_index >= cfg.methods.size()) throw ConfigError("method index out of range");
  return run_with_factor(cfg, cfg.methods[method_index], seed, benchmark_factor(cfg));
}

std::vector<RunRecord> run_benchmark(const BenchConfig& cfg, std::size_t parallel) {
  cfg.validate();
  const auto factor = benchmark_factor(cfg);

  struct Job {
    const MethodSpec* method;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& m : cfg.methods) {
    for (auto seed : cfg.seeds) jobs.push_back({&m, seed});
  }
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    return a.method->label != b.method->label ? a.method->label < b.method->label
                                              : a.seed < b.seed;
  });

  const std::filesystem::path out_dir = cfg.output_dir;
  const bool write = !cfg.output_dir.empty();
  std::vector<RunRecord> records(jobs.size());
  internal::parallel_for(jobs.size(), parallel, [&](std::size_t i) {
    RunOutput run = run_with_factor(cfg, *jobs[i].method, jobs[i].seed, factor);
    if (write) {
      const auto dir = out_dir / jobs[i].method->label / std::to_string(jobs[i].seed);
      std::filesystem::create_directories(dir);
      std::ostringstream trace, traj;
      write_trace_csv(run.result.trace, trace, jobs[i].method->label);
      write_trajectory_csv(run.result.trajectory, traj);
      write_file(dir / "trace.csv", trace.str());
      write_file(dir / "trajectory.csv", traj.str());
    }
    records[i] = std::move(run.record);
  });

  if (write) {
    std::filesystem::create_directories(out_dir);
    std::ostringstream rec, sum;
    write_records_csv(records, rec);
    const auto rows = aggregate(records);
    write_summary_csv(rows, sum);
    write_file(out_dir / "records.csv", rec.str());
    write_file(out_dir / "summary.csv", sum.str());
  }
  return records;
}

void write_records_csv(std::span<const RunRecord> records, std::ostream& out) {
  out << kRecordsHeader << "\n";
  for (const auto& r : records) {
    out << r.method << "," << r.seed << "," << (r.success ? 1 : 0) << ","
        << format_double(r.runtime) << "," << format_double(r.path_length) << ","
        << optional_field(r.avg_jerk) << "," << r.iterations_used << ","
        << optional_field(r.first_collision_time) << "\n";
  }
}

std::vector<RunRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("records file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordsHeader) throw ParseError("unexpected records header: " + line);
  std::vector<RunRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 8) {
      throw ParseError("records line " + std::to_string(line_no) + ": expected 8 fields");
    }
    try {
      RunRecord r;
      r.method = f[0];
      std::size_t used = 0;
      r.seed = std::stoull(f[1], &used);
      if (used != f[1].size()) throw ParseError("bad seed");
      if (f[2] != "0" && f[2] != "1") throw ParseError("bad success flag");
      r.success = f[2] == "1";
      r.runtime = parse_double(f[3]);
      r.path_length = parse_double(f[4]);
      r.avg_jerk = parse_optional(f[5]);
      r.iterations_used = std::stoull(f[6], &used);
      if (used != f[6].size()) throw ParseError("bad iteration count");
      r.first_collision_time = parse_optional(f[7]);
      if (r.success != r.avg_jerk.has_value()) {
        throw ParseError("avg_jerk must be present exactly for successful runs");
      }
      records.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ParseError("records line " + std::to_string(line_no) + ": bad integer field");
    } catch (const ParseError& e) {
      throw ParseError("records line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

SummaryStat summarize(std::span<const double> values) {
  if (values.empty()) throw PreconditionError("summarize needs at least one value");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / static_cast<double>(v.size());
  if (v.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

std::vector<SummaryRow> aggregate(std::span<const RunRecord> records) {
  if (records.empty()) throw PreconditionError("aggregate needs at least one record");
  std::map<std::string, std::vector<const RunRecord*>> by_method;
  for (const auto& r : records) by_method[r.method].push_back(&r);

  std::vector<SummaryRow> rows;
  for (const auto& [method, runs] : by_method) {
    SummaryRow row;
    row.method = method;
    row.runs = runs.size();
    std::vector<double> runtime, length, jerk;
    for (const RunRecord* r : runs) {
      runtime.push_back(r->runtime);
      length.push_back(r->path_length);
      if (r->success) {
        ++row.successes;
        if (r->avg_jerk) jerk.push_back(*r->avg_jerk);
      }
    }
    row.success_rate = 100.0 * static_cast<double>(row.successes) / static_cast<double>(row.runs);
    row.runtime = summarize(runtime);
    row.path_length = summarize(length);
    if (!jerk.empty()) row.avg_jerk = summarize(jerk);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out) {
  out << "method,runs,success_rate,time_mean_s,time_std_s,path_length_mean,path_length_std,"
         "avg_jerk_mean,avg_jerk_std\n";
  for (const auto& r : rows) {
    out << r.method << "," << r.runs << "," << format_double(r.success_rate) << ","
        << format_double(r.runtime.mean) << "," << format_double(r.runtime.stddev) << ","
        << format_double(r.path_length.mean) << "," << format_double(r.path_length.stddev)
        << ",";
    if (r.avg_jerk) {
      out << format_double(r.avg_jerk->mean) << "," << format_double(r.avg_jerk->stddev);
    } else {
      out << "-,-";
    }
    out << "\n";
  }
}

std::string format_summary_table(std::span<const SummaryRow> rows) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-12s %8s %22s %22s %26s\n", "method", "success",
                "time [s]", "path length", "avg jerk");
  out << buf;
  for (const auto& r : rows) {
    char rate[32];
    std::snprintf(rate, sizeof rate, "%.1f%%", r.success_rate);
    std::snprintf(buf, sizeof buf, "%-12s %8s %22s %22s %26s\n", r.method.c_str(), rate,
                  format_stat(r.runtime).c_str(), format_stat(r.path_length).c_str(),
                  r.avg_jerk ? format_stat(*r.avg_jerk).c_str() : "-");
    out << buf;
  }
  return out.str();
}

RunRecord evaluate_waypoints(const WaypointPath& path, const BoxEnvironment& env,
                             const TimeGrid& grid) {
  const auto start = Clock::now();
  const WaypointPath cleaned = merge_duplicate_waypoints(unwrap_angles(path));
  const auto times = arc_length_times(cleaned, grid.horizon_seconds());
  const Trajectory traj = resample(cleaned, times, grid);
  RunRecord r = score_run("external", 0, traj, env);
  r.runtime = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

ExternalEvaluation evaluate_external(const std::filesystem::path& path_file,
                                     const BoxEnvironment& env, const TimeGrid& grid) {
  ExternalEvaluation result;
  result.record.method = "external";
  try {
    std::ifstream in(path_file);
    if (!in) throw ParseError("cannot open waypoint file " + path_file.string());
    result.record = evaluate_waypoints(read_waypoint_csv(in), env, grid);
    result.valid = true;
  } catch (const ParseError& e) {
    result.error = std::string("parse error: ") + e.what();
  } catch (const DegeneratePathError& e) {
    result.error = std::string("degenerate path: ") + e.what();
  } catch (const std::invalid_argument& e) {
    result.error = std::string("invalid path: ") + e.what();
  }
  return result;
}

}  // namespace nfg
