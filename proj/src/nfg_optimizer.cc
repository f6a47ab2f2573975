#include "nfg/nfg_optimizer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "nfg/errors.h"
#include "parallel.h"

namespace nfg {

double NfgConfig::step_size(std::size_t iteration) const {
  if (step_sizes.size() == 1) return step_sizes.front();
  return step_sizes.at(iteration);
}

void NfgConfig::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("nfg: sigma must be positive");
  if (!(n_pow > 0.0) || !std::isfinite(n_pow)) throw ConfigError("nfg: n_pow must be positive");
  if (batch < 1) throw ConfigError("nfg: batch must be at least 1");
  if (iterations < 1) throw ConfigError("nfg: iterations must be at least 1");
  if (step_sizes.empty()) throw ConfigError("nfg: step size schedule is empty");
  if (step_sizes.size() != 1 && step_sizes.size() != iterations) {
    throw ConfigError("nfg: step size schedule needs 1 or " + std::to_string(iterations) +
                      " entries, got " + std::to_string(step_sizes.size()));
  }
  for (double eta : step_sizes) {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw ConfigError("nfg: step sizes must be positive");
  }
  if (workers < 1) throw ConfigError("nfg: workers must be at least 1");
}

GradientEstimate estimate_gradient(const Eigen::MatrixXd& mu, const ValueFunction& objective,
                                   const PerturbationSampler& sampler, const NfgConfig& cfg,
                                   std::size_t iteration) {
  if (sampler.factor().size() != mu.rows()) {
    throw ConfigError("covariance factor size does not match the trajectory grid");
  }
  if (sampler.sigma() != cfg.sigma) {
    throw ConfigError("sampler noise scale differs from the optimizer's sigma");
  }
  const std::size_t batch = cfg.batch;
  const Eigen::Index dims = mu.cols();

  std::vector<Eigen::MatrixXd> eps(batch);
  std::vector<double> scores(batch);
  internal::parallel_for(batch, cfg.workers, [&](std::size_t s) {
    eps[s] = sampler.draw(iteration, s, dims);
    scores[s] = objective(mu + eps[s]);
  });

  std::vector<double> weights;
  if (cfg.weight_mode == WeightMode::kShifted) {
    weights = shifted_weights(scores, cfg.n_pow);
  } else {
    const ScoreConfig transform{.lambda_jerk = 0.0, .n_pow = cfg.n_pow};
    weights.resize(batch);
    for (std::size_t s = 0; s < batch; ++s) weights[s] = exp_transform(scores[s], transform);
  }

  GradientEstimate out;
  out.direction = Eigen::MatrixXd::Zero(mu.rows(), dims);
  double weight_sum = 0.0;
  // Fixed index order keeps the sum independent of the worker count.
  for (std::size_t s = 0; s < batch; ++s) {
    weight_sum += weights[s];
    if (weights[s] != 0.0) out.direction += weights[s] * eps[s];
  }
  if (weight_sum == 0.0) throw DegenerateBatchError(iteration);
  out.direction /= static_cast<double>(batch) * cfg.sigma * cfg.sigma;
  out.best_score = *std::max_element(scores.begin(), scores.end());
  out.mean_weight = weight_sum / static_cast<double>(batch);
  out.norm = out.direction.norm();
  return out;
}

GradientEstimate estimate_gradient(const Trajectory& mu, const ScoreFunction& objective,
                                   const PerturbationSampler& sampler, const NfgConfig& cfg,
                                   std::size_t iteration) {
  const TimeGrid& grid = mu.grid();
  const ValueFunction on_values = [&](const Eigen::MatrixXd& values) {
    return objective(Trajectory(grid, values));
  };
  return estimate_gradient(mu.values(), on_values, sampler, cfg, iteration);
}

GradientEstimate estimate_gradient(const Trajectory& mu, const BoxEnvironment& env,
                                   const ScoreConfig& score_cfg,
                                   const PerturbationSampler& sampler, const NfgConfig& cfg,
                                   std::size_t iteration) {
  const ScoreFunction objective = [&](const Trajectory& xi) {
    return trajectory_score(env, xi, score_cfg);
  };
  return estimate_gradient(mu, objective, sampler, cfg, iteration);
}

Trajectory step(const Trajectory& mu, const Eigen::MatrixXd& direction, double eta,
                const BoundaryPins& pins) {
  if (direction.rows() != mu.values().rows() || direction.cols() != mu.values().cols()) {
    throw ConfigError("update direction shape does not match trajectory");
  }
  Eigen::MatrixXd values = mu.values() + eta * direction;
  pins.apply(values);
  return Trajectory(mu.grid(), std::move(values));
}

OptimizationResult optimize(const Trajectory& mu0, const ScoreFunction& objective,
                            const PerturbationSampler& sampler, const NfgConfig& cfg,
                            const FeasibilityFunction& feasible) {
  cfg.validate();
  using Clock = std::chrono::steady_clock;
  const BoundaryPins pins = BoundaryPins::from(mu0, cfg.pin_start, cfg.pin_goal);
  OptimizationResult result{.trajectory = mu0, .trace = {}};
  for (std::size_t k = 0; k < cfg.iterations; ++k) {
    if (cfg.early_stop && feasible && feasible(result.trajectory)) {
      result.early_stopped = true;
      break;
    }
    const auto start = Clock::now();
    IterationTrace record{.iteration = k};
    try {
      const GradientEstimate estimate =
          estimate_gradient(result.trajectory, objective, sampler, cfg, k);
      Eigen::MatrixXd direction = estimate.direction;
      if (cfg.normalize_step) direction /= estimate.norm + 1e-12;
      result.trajectory = step(result.trajectory, direction, cfg.step_size(k), pins);
      record.best_score = estimate.best_score;
      record.mean_weight = estimate.mean_weight;
      record.estimator_norm = estimate.norm;
    } catch (const DegenerateBatchError&) {
      record.degenerate = true;
      record.best_score = -std::numeric_limits<double>::infinity();
      ++result.degenerate_batches;
    }
    record.feasible = feasible ? feasible(result.trajectory) : false;
    record.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
    result.trace.push_back(record);
    ++result.iterations_used;
  }
  return result;
}

OptimizationResult optimize(const Trajectory& mu0, const BoxEnvironment& env,
                            const ScoreConfig& score_cfg, const PerturbationSampler& sampler,
                            const NfgConfig& cfg) {
  const ScoreFunction objective = [&](const Trajectory& xi) {
    return trajectory_score(env, xi, score_cfg);
  };
  const FeasibilityFunction feasible = [&](const Trajectory& xi) {
    return is_collision_free(env, xi);
  };
  return optimize(mu0, objective, sampler, cfg, feasible);
}

}  // namespace nfg
