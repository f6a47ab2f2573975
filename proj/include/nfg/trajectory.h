#pragma once

#include <cstddef>
#include <iosfwd>

#include <Eigen/Dense>

#include "nfg/time_grid.h"

namespace nfg {

// Values of a d-dimensional trajectory on a TimeGrid. Row i holds the
// configuration at grid.time(i). All entries are finite.
class Trajectory {
 public:
  Trajectory(TimeGrid grid, Eigen::MatrixXd values);

  // All-zero trajectory with the given number of dimensions.
  static Trajectory zeros(const TimeGrid& grid, std::size_t dims = 1);

  const TimeGrid& grid() const { return grid_; }
  const Eigen::MatrixXd& values() const { return values_; }
  std::size_t steps() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t dims() const { return static_cast<std::size_t>(values_.cols()); }
  double operator()(std::size_t i, std::size_t d) const { return values_(i, d); }

  // Returns a copy with values + delta. Throws ConfigError on shape mismatch
  // or PreconditionError if the result is not finite.
  Trajectory shifted(const Eigen::MatrixXd& delta) const;

 private:
  TimeGrid grid_;
  Eigen::MatrixXd values_;
};

// Mean of |y[t+3] - 3y[t+2] + 3y[t+1] - y[t]| / dt^3 over the steps-3 valid
// windows and all dimensions. No padding at the ends.
double average_abs_jerk(const Trajectory& traj);

// Sum over dimensions and steps of |y[t+1] - y[t]|.
double path_length(const Trajectory& traj);

// Third-difference stencil applied to one column, divided by dt^3.
// Returns steps-3 entries.
Eigen::VectorXd jerk_profile(const Eigen::VectorXd& column, double dt);

// Full-precision CSV, header "t,dim0,...,dimN".
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

// Reads the format written by write_trajectory_csv. The grid is rebuilt
// from the row count and the spacing of the t column.
Trajectory read_trajectory_csv(std::istream& in);

}  // namespace nfg
