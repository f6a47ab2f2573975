#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "nfg/trajectory.h"

namespace nfg {

// One completed optimizer iteration.
struct IterationTrace {
  std::size_t iteration = 0;
  double best_score = 0.0;      // best objective among candidates evaluated
  double mean_weight = 0.0;     // mean sample weight (0 for gradient methods)
  double estimator_norm = 0.0;  // Frobenius norm of the update direction
  bool feasible = false;        // current trajectory collision-free after the update
  bool degenerate = false;      // batch skipped because every weight was zero
  double wall_time = 0.0;       // seconds spent in this iteration
};

// "iter,best_score,mean_weight,grad_norm,feasible,wall_time_s", with a
// leading "method" column when a label is given.
void write_trace_csv(std::span<const IterationTrace> trace, std::ostream& out,
                     const std::optional<std::string>& method = std::nullopt);

// Start/goal rows held fixed after every update.
struct BoundaryPins {
  std::optional<Eigen::RowVectorXd> start;
  std::optional<Eigen::RowVectorXd> goal;

  // Pins taken from the first (and optionally last) row of a trajectory.
  static BoundaryPins from(const Trajectory& traj, bool pin_start, bool pin_goal);

  void apply(Eigen::MatrixXd& values) const;
};

// Outcome shared by all optimizers.
struct OptimizationResult {
  Trajectory trajectory;
  std::vector<IterationTrace> trace;
  std::size_t iterations_used = 0;
  bool early_stopped = false;
  std::size_t degenerate_batches = 0;
};

}  // namespace nfg
