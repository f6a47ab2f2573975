#include "nfg/trajectory.h"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "nfg/csv.h"
#include "nfg/errors.h"

namespace nfg {

Trajectory::Trajectory(TimeGrid grid, Eigen::MatrixXd values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.rows()) != grid_.steps()) {
    throw ConfigError("trajectory has " + std::to_string(values_.rows()) +
                      " rows but the grid has " + std::to_string(grid_.steps()) +
                      " steps");
  }
  if (values_.cols() < 1) {
    throw ConfigError("trajectory needs at least one dimension");
  }
  if (!values_.allFinite()) {
    throw PreconditionError("trajectory values must be finite");
  }
}

Trajectory Trajectory::zeros(const TimeGrid& grid, std::size_t dims) {
  return Trajectory(grid, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(grid.steps()),
                                                static_cast<Eigen::Index>(dims)));
}

Trajectory Trajectory::shifted(const Eigen::MatrixXd& delta) const {
  if (delta.rows() != values_.rows() || delta.cols() != values_.cols()) {
    throw ConfigError("perturbation shape does not match trajectory");
  }
  return Trajectory(grid_, values_ + delta);
}

Eigen::VectorXd jerk_profile(const Eigen::VectorXd& column, double dt) {
  const Eigen::Index n = column.size();
  if (n < 4) {
    throw PreconditionError("jerk needs at least 4 samples");
  }
  const double inv_dt3 = 1.0 / (dt * dt * dt);
  Eigen::VectorXd jerk(n - 3);
  for (Eigen::Index t = 0; t + 3 < n; ++t) {
    jerk(t) = (column(t + 3) - 3.0 * column(t + 2) + 3.0 * column(t + 1) - column(t)) *
              inv_dt3;
  }
  return jerk;
}

double average_abs_jerk(const Trajectory& traj) {
  if (traj.steps() < 4) {
    throw PreconditionError("jerk needs at least 4 grid points");
  }
  double total = 0.0;
  for (std::size_t d = 0; d < traj.dims(); ++d) {
    total += jerk_profile(traj.values().col(static_cast<Eigen::Index>(d)), traj.grid().dt())
                 .cwiseAbs()
                 .sum();
  }
  const double windows = static_cast<double>(traj.steps() - 3) * static_cast<double>(traj.dims());
  return total / windows;
}

double path_length(const Trajectory& traj) {
  if (traj.steps() < 2) {
    throw PreconditionError("path length needs at least 2 grid points");
  }
  const auto& v = traj.values();
  return (v.bottomRows(v.rows() - 1) - v.topRows(v.rows() - 1)).cwiseAbs().sum();
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  out << "t";
  for (std::size_t d = 0; d < traj.dims(); ++d) out << ",dim" << d;
  out << "\n";
  for (std::size_t i = 0; i < traj.steps(); ++i) {
    out << format_double(traj.grid().time(i));
    for (std::size_t d = 0; d < traj.dims(); ++d) out << "," << format_double(traj(i, d));
    out << "\n";
  }
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty trajectory file");
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "t") {
    throw ParseError("trajectory header must start with 't' and name at least one dimension");
  }
  const std::size_t dims = header.size() - 1;
  std::vector<double> times;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw ParseError("trajectory row has " + std::to_string(fields.size()) +
                       " fields, expected " + std::to_string(header.size()));
    }
    times.push_back(parse_double(fields[0]));
    std::vector<double> row;
    for (std::size_t d = 0; d < dims; ++d) row.push_back(parse_double(fields[d + 1]));
    rows.push_back(std::move(row));
  }
  if (times.size() < 4) throw ParseError("trajectory file has fewer than 4 rows");
  const double rate = 1.0 / (times[1] - times[0]);
  const double rounded_rate = std::round(rate);
  const double use_rate = std::abs(rate - rounded_rate) < 1e-6 * rate ? rounded_rate : rate;
  TimeGrid grid(static_cast<double>(times.size()) / use_rate, use_rate);
  Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dims));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t d = 0; d < dims; ++d) {
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = rows[i][d];
    }
  }
  return Trajectory(grid, std::move(values));
}

}  // namespace nfg
