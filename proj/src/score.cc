#include "nfg/score.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nfg/errors.h"

namespace nfg {

void ScoreConfig::validate() const {
  if (!(lambda_jerk >= 0.0) || !std::isfinite(lambda_jerk)) {
    throw ConfigError("lambda_jerk must be non-negative");
  }
  if (!(n_pow > 0.0) || !std::isfinite(n_pow)) throw ConfigError("n_pow must be positive");
}

namespace {

void require_one_dim(const Trajectory& traj) {
  if (traj.dims() != 1) {
    throw PreconditionError("box environments score 1-D trajectories only");
  }
}

}  // namespace

Eigen::VectorXd penetration_profile(const BoxEnvironment& env, const Trajectory& traj) {
  require_one_dim(traj);
  Eigen::VectorXd s(static_cast<Eigen::Index>(traj.steps()));
  for (std::size_t i = 0; i < traj.steps(); ++i) {
    s(static_cast<Eigen::Index>(i)) = penetration_step(env, traj.grid().time(i), traj(i, 0));
  }
  return s;
}

bool is_collision_free(const BoxEnvironment& env, const Trajectory& traj) {
  return !first_collision(env, traj).has_value();
}

std::optional<std::size_t> first_collision(const BoxEnvironment& env, const Trajectory& traj) {
  require_one_dim(traj);
  for (std::size_t i = 0; i < traj.steps(); ++i) {
    if (penetration_step(env, traj.grid().time(i), traj(i, 0)) < 0.0) return i;
  }
  return std::nullopt;
}

double trajectory_score(const BoxEnvironment& env, const Trajectory& traj,
                        const ScoreConfig& cfg) {
  const Eigen::VectorXd s = penetration_profile(env, traj);
  if ((s.array() == 0.0).all()) {
    return std::exp(-cfg.lambda_jerk * average_abs_jerk(traj));
  }
  return s.mean();
}

double exp_transform(double score, const ScoreConfig& cfg) {
  if (score == -std::numeric_limits<double>::infinity()) return 0.0;
  return std::exp(std::clamp(cfg.n_pow * score, -kExpClamp, kExpClamp));
}

std::vector<double> shifted_weights(std::span<const double> scores, double n_pow) {
  std::vector<double> weights(scores.size(), 0.0);
  double best = -std::numeric_limits<double>::infinity();
  for (double s : scores) best = std::max(best, s);
  if (best == -std::numeric_limits<double>::infinity()) return weights;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] == -std::numeric_limits<double>::infinity()) continue;
    weights[i] = std::exp(n_pow * (scores[i] - best));
  }
  return weights;
}

}  // namespace nfg
