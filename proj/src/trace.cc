#include "nfg/trace.h"

#include <ostream>

#include "nfg/csv.h"

namespace nfg {

void write_trace_csv(std::span<const IterationTrace> trace, std::ostream& out,
                     const std::optional<std::string>& method) {
  if (method) out << "method,";
  out << "iter,best_score,mean_weight,grad_norm,feasible,wall_time_s\n";
  for (const auto& r : trace) {
    if (method) out << *method << ",";
    out << r.iteration << "," << format_double(r.best_score) << ","
        << format_double(r.mean_weight) << "," << format_double(r.estimator_norm) << ","
        << (r.feasible ? 1 : 0) << "," << format_double(r.wall_time) << "\n";
  }
}

BoundaryPins BoundaryPins::from(const Trajectory& traj, bool pin_start, bool pin_goal) {
  BoundaryPins pins;
  if (pin_start) pins.start = traj.values().row(0);
  if (pin_goal) pins.goal = traj.values().row(traj.values().rows() - 1);
  return pins;
}

void BoundaryPins::apply(Eigen::MatrixXd& values) const {
  if (start) values.row(0) = *start;
  if (goal) values.row(values.rows() - 1) = *goal;
}

}  // namespace nfg
