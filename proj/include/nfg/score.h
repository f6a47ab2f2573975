#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nfg/environment.h"
#include "nfg/trajectory.h"

namespace nfg {

struct ScoreConfig {
  double lambda_jerk = 1e-4;
  double n_pow = 100.0;

  void validate() const;
};

// Exponent arguments are clamped to this magnitude before exp().
inline constexpr double kExpClamp = 700.0;

// Per-step penetration s_t at t = grid.time(i) for a 1-D trajectory.
Eigen::VectorXd penetration_profile(const BoxEnvironment& env, const Trajectory& traj);

// True when every grid point has zero penetration.
bool is_collision_free(const BoxEnvironment& env, const Trajectory& traj);

// Index of the first colliding grid point, if any.
std::optional<std::size_t> first_collision(const BoxEnvironment& env, const Trajectory& traj);

// exp(-lambda_jerk * average_abs_jerk) when collision-free (in (0, 1]),
// otherwise the mean penetration (<= 0). Requires a 1-D trajectory.
double trajectory_score(const BoxEnvironment& env, const Trajectory& traj,
                        const ScoreConfig& cfg);

// exp(n_pow * score) with the exponent clamped to +-kExpClamp; -inf maps
// to 0.
double exp_transform(double score, const ScoreConfig& cfg);

// exp(n_pow * (score_s - max score)). Entries with score -inf get 0; if all
// scores are -inf every weight is 0.
std::vector<double> shifted_weights(std::span<const double> scores, double n_pow);

}  // namespace nfg
