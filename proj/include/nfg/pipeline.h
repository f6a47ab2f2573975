#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nfg/time_grid.h"
#include "nfg/trajectory.h"

namespace nfg {

// Ordered waypoints produced by some planner, one row per configuration.
// Columns flagged in `angular` are treated as angles (radians) by
// unwrap_angles; an empty mask means no angular columns.
struct WaypointPath {
  Eigen::MatrixXd waypoints;
  std::vector<bool> angular;

  std::size_t size() const { return static_cast<std::size_t>(waypoints.rows()); }
  std::size_t dims() const { return static_cast<std::size_t>(waypoints.cols()); }
};

// Shifts each angular column by multiples of 2*pi so that consecutive
// increments lie in [-pi, pi].
WaypointPath unwrap_angles(const WaypointPath& path);

// Drops waypoints identical to their predecessor.
WaypointPath merge_duplicate_waypoints(const WaypointPath& path);

// Timestamps t_i = (s_i / S) * duration where s_i is the cumulative
// Euclidean distance along the path. Throws DegeneratePathError when S = 0
// or the path has fewer than two waypoints.
std::vector<double> arc_length_times(const WaypointPath& path, double duration);

// Piecewise-linear interpolation of the timed path at grid.time(k). The
// final timestamp must equal grid.horizon_seconds(); queries at or beyond it
// return the last waypoint.
Trajectory resample(const WaypointPath& path, std::span<const double> timestamps,
                    const TimeGrid& grid);

// Waypoint CSV: one configuration per row, optional non-numeric header,
// consistent column count.
WaypointPath read_waypoint_csv(std::istream& in);

}  // namespace nfg
