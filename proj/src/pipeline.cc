#include "nfg/pipeline.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <string>

#include "nfg/csv.h"
#include "nfg/errors.h"

namespace nfg {

WaypointPath unwrap_angles(const WaypointPath& path) {
  WaypointPath out = path;
  const double two_pi = 2.0 * std::numbers::pi;
  for (Eigen::Index d = 0; d < path.waypoints.cols(); ++d) {
    if (static_cast<std::size_t>(d) >= path.angular.size() || !path.angular[d]) continue;
    double correction = 0.0;
    for (Eigen::Index i = 1; i < path.waypoints.rows(); ++i) {
      const double delta = path.waypoints(i, d) - path.waypoints(i - 1, d);
      // Same convention as numpy.unwrap: map into [-pi, pi), keeping +pi
      // for positive increments of exactly pi.
      double wrapped = std::fmod(delta + std::numbers::pi, two_pi);
      if (wrapped < 0.0) wrapped += two_pi;
      wrapped -= std::numbers::pi;
      if (wrapped == -std::numbers::pi && delta > 0.0) wrapped = std::numbers::pi;
      if (std::abs(delta) >= std::numbers::pi) correction += wrapped - delta;
      out.waypoints(i, d) = path.waypoints(i, d) + correction;
    }
  }
  return out;
}

WaypointPath merge_duplicate_waypoints(const WaypointPath& path) {
  if (path.size() == 0) return path;
  std::vector<Eigen::Index> keep{0};
  for (Eigen::Index i = 1; i < path.waypoints.rows(); ++i) {
    if (path.waypoints.row(i) != path.waypoints.row(keep.back())) keep.push_back(i);
  }
  WaypointPath out;
  out.angular = path.angular;
  out.waypoints.resize(static_cast<Eigen::Index>(keep.size()), path.waypoints.cols());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    out.waypoints.row(static_cast<Eigen::Index>(k)) = path.waypoints.row(keep[k]);
  }
  return out;
}

std::vector<double> arc_length_times(const WaypointPath& path, double duration) {
  if (path.size() < 2) {
    throw DegeneratePathError("arc-length timing needs at least two waypoints");
  }
  if (!(duration > 0.0)) {
    throw ConfigError("duration must be positive");
  }
  std::vector<double> cumulative(path.size(), 0.0);
  for (Eigen::Index i = 1; i < path.waypoints.rows(); ++i) {
    cumulative[i] =
        cumulative[i - 1] + (path.waypoints.row(i) - path.waypoints.row(i - 1)).norm();
  }
  const double total = cumulative.back();
  if (!(total > 0.0)) {
    throw DegeneratePathError("path has zero arc length (all waypoints identical)");
  }
  std::vector<double> times(path.size());
  for (std::size_t i = 0; i < times.size(); ++i) times[i] = cumulative[i] / total * duration;
  times.back() = duration;
  return times;
}

Trajectory resample(const WaypointPath& path, std::span<const double> timestamps,
                    const TimeGrid& grid) {
  if (timestamps.size() != path.size() || path.size() < 2) {
    throw ConfigError("need one timestamp per waypoint and at least two waypoints");
  }
  const double final_time = timestamps.back();
  if (std::abs(final_time - grid.horizon_seconds()) >
      1e-9 * std::max(1.0, grid.horizon_seconds())) {
    throw ConfigError("final timestamp " + std::to_string(final_time) +
                      " does not match grid horizon " +
                      std::to_string(grid.horizon_seconds()));
  }
  Eigen::MatrixXd values(static_cast<Eigen::Index>(grid.steps()), path.waypoints.cols());
  const Eigen::Index last = path.waypoints.rows() - 1;
  for (std::size_t k = 0; k < grid.steps(); ++k) {
    const double tau = grid.time(k);
    const auto row = static_cast<Eigen::Index>(k);
    if (tau >= final_time) {
      values.row(row) = path.waypoints.row(last);
      continue;
    }
    // Segment i with t_i <= tau < t_{i+1}; zero-length segments are skipped
    // because upper_bound lands past every equal timestamp.
    const auto upper = std::upper_bound(timestamps.begin(), timestamps.end(), tau);
    const auto i = static_cast<Eigen::Index>(std::distance(timestamps.begin(), upper)) - 1;
    if (i < 0) {
      values.row(row) = path.waypoints.row(0);
      continue;
    }
    const double t0 = timestamps[i];
    const double t1 = timestamps[i + 1];
    const double fraction = (tau - t0) / (t1 - t0);
    values.row(row) = path.waypoints.row(i) +
                      fraction * (path.waypoints.row(i + 1) - path.waypoints.row(i));
  }
  return Trajectory(grid, std::move(values));
}

WaypointPath read_waypoint_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_number = 0;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    std::vector<double> row;
    try {
      for (const auto& f : fields) row.push_back(parse_double(f));
    } catch (const ParseError&) {
      if (rows.empty() && line_number == 1) continue;  // header
      throw ParseError("line " + std::to_string(line_number) + ": non-numeric field");
    }
    if (columns == 0) columns = row.size();
    if (row.size() != columns) {
      throw ParseError("line " + std::to_string(line_number) + ": expected " +
                       std::to_string(columns) + " columns, found " +
                       std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  WaypointPath path;
  path.waypoints.resize(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(columns));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t d = 0; d < columns; ++d) {
      path.waypoints(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = rows[i][d];
    }
  }
  return path;
}

}  // namespace nfg
