#include "nfg/baselines.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "nfg/errors.h"
#include "nfg/nfg_optimizer.h"
#include "parallel.h"

namespace nfg {
namespace {

using Clock = std::chrono::steady_clock;

// Keeps CHOMP tie-break and MPPI noise streams disjoint from the
// perturbation sampler's streams for the same seed.
constexpr std::uint64_t kChompStream = 2ULL << 40;
constexpr std::uint64_t kMppiStream = 3ULL << 40;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_one_dim(const Trajectory& y, const char* method) {
  if (y.dims() != 1) throw PreconditionError(std::string(method) + " expects a 1-D trajectory");
}

}  // namespace

// ---------------------------------------------------------------------------
// STOMP

void StompConfig::validate() const {
  if (batch < 2) throw ConfigError("stomp: batch must be at least 2");
  if (iterations < 1) throw ConfigError("stomp: iterations must be at least 1");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw ConfigError("stomp: temperature must be positive");
  }
  if (workers < 1) throw ConfigError("stomp: workers must be at least 1");
}

std::vector<double> stomp_weights(std::span<const double> costs, double temperature) {
  const auto [lo, hi] = std::minmax_element(costs.begin(), costs.end());
  const double range = *hi - *lo + 1e-12;
  std::vector<double> w(costs.size());
  double total = 0.0;
  for (std::size_t s = 0; s < costs.size(); ++s) {
    w[s] = std::exp(-temperature * (costs[s] - *lo) / range);
    total += w[s];
  }
  for (double& v : w) v /= total;
  return w;
}

StompUpdate stomp_iterate(const Trajectory& y, const BoxEnvironment& env,
                          const ScoreConfig& score_cfg, const StompConfig& cfg,
                          const PerturbationSampler& sampler, std::size_t iteration,
                          const BoundaryPins& pins) {
  if (static_cast<std::size_t>(sampler.factor().size()) != y.steps()) {
    throw ConfigError("covariance factor size does not match the trajectory grid");
  }
  const auto dims = static_cast<Eigen::Index>(y.dims());
  std::vector<Eigen::MatrixXd> eps(cfg.batch);
  std::vector<double> scores(cfg.batch);
  internal::parallel_for(cfg.batch, cfg.workers, [&](std::size_t s) {
    eps[s] = sampler.draw(iteration, s, dims);
    scores[s] = trajectory_score(env, y.shifted(eps[s]), score_cfg);
  });
  std::vector<double> costs(cfg.batch);
  for (std::size_t s = 0; s < cfg.batch; ++s) costs[s] = 1.0 - scores[s];

  StompUpdate out{.trajectory = y, .weights = stomp_weights(costs, cfg.temperature)};
  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(y.values().rows(), dims);
  for (std::size_t s = 0; s < cfg.batch; ++s) delta += out.weights[s] * eps[s];
  out.update_norm = delta.norm();
  out.best_score = *std::max_element(scores.begin(), scores.end());
  Eigen::MatrixXd values = y.values() + delta;
  pins.apply(values);
  out.trajectory = Trajectory(y.grid(), std::move(values));
  return out;
}

OptimizationResult stomp_optimize(const Trajectory& y0, const BoxEnvironment& env,
                                  const ScoreConfig& score_cfg, const StompConfig& cfg,
                                  const PerturbationSampler& sampler) {
  cfg.validate();
  const BoundaryPins pins = BoundaryPins::from(y0, cfg.pin_start, cfg.pin_goal);
  OptimizationResult result{.trajectory = y0, .trace = {}};
  for (std::size_t k = 0; k < cfg.iterations; ++k) {
    const auto start = Clock::now();
    StompUpdate update = stomp_iterate(result.trajectory, env, score_cfg, cfg, sampler, k, pins);
    result.trajectory = std::move(update.trajectory);
    double mean_weight = 0.0;
    for (double w : update.weights) mean_weight += w;
    mean_weight /= static_cast<double>(update.weights.size());
    result.trace.push_back({.iteration = k,
                            .best_score = update.best_score,
                            .mean_weight = mean_weight,
                            .estimator_norm = update.update_norm,
                            .feasible = is_collision_free(env, result.trajectory),
                            .wall_time = seconds_since(start)});
    ++result.iterations_used;
  }
  return result;
}

// ---------------------------------------------------------------------------
// CHOMP

void ChompConfig::validate() const {
  if (iterations < 1) throw ConfigError("chomp: iterations must be at least 1");
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("chomp: step must be positive");
  if (!(lambda_jerk >= 0.0)) throw ConfigError("chomp: lambda_jerk must be non-negative");
}

Eigen::VectorXd chomp_gradient(const Trajectory& y, const BoxEnvironment& env,
                               const ChompConfig& cfg, CounterRng& rng) {
  require_one_dim(y, "chomp");
  const auto n = static_cast<Eigen::Index>(y.steps());
  const Eigen::VectorXd s = penetration_profile(env, y);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(n);

  Eigen::Index deepest = 0;
  const double min_s = s.minCoeff(&deepest);
  if (min_s < 0.0) {
    Eigen::Index lo = deepest;
    Eigen::Index hi = deepest;
    while (lo > 0 && s(lo - 1) < 0.0) --lo;
    while (hi + 1 < n && s(hi + 1) < 0.0) ++hi;
    std::optional<double> tie_sign;
    const double inv_len = 1.0 / static_cast<double>(n);
    for (Eigen::Index i = lo; i <= hi; ++i) {
      const double t = y.grid().time(static_cast<std::size_t>(i));
      const double v = y(static_cast<std::size_t>(i), 0);
      const BoxObstacle* setter = nullptr;
      for (const auto& box : env.boxes()) {
        if (box.contains(t, v) && (setter == nullptr || box.depth(v) < setter->depth(v))) {
          setter = &box;
        }
      }
      if (setter == nullptr) continue;
      const double to_upper = setter->y_hi - v;
      const double to_lower = v - setter->y_lo;
      double normal = 0.0;
      if (to_upper < to_lower) {
        normal = 1.0;
      } else if (to_lower < to_upper) {
        normal = -1.0;
      } else {
        if (!tie_sign) tie_sign = rng.uniform() < 0.5 ? 1.0 : -1.0;
        normal = *tie_sign;
      }
      grad(i) = -normal * inv_len;
    }
    return grad;
  }

  const double dt = y.grid().dt();
  const Eigen::VectorXd column = y.values().col(0);
  const Eigen::VectorXd jerk = jerk_profile(column, dt);
  const double mean_abs = jerk.cwiseAbs().mean();
  const double scale = cfg.lambda_jerk * std::exp(-cfg.lambda_jerk * mean_abs) /
                       (dt * dt * dt * static_cast<double>(jerk.size()));
  for (Eigen::Index t = 0; t < jerk.size(); ++t) {
    // Differences within round-off of zero take the zero subgradient, so
    // sampled straight lines stay fixed points.
    const double raw = column(t + 3) - 3.0 * column(t + 2) + 3.0 * column(t + 1) - column(t);
    const double noise = 16.0 * std::numeric_limits<double>::epsilon() *
                         (std::abs(column(t + 3)) + 3.0 * std::abs(column(t + 2)) +
                          3.0 * std::abs(column(t + 1)) + std::abs(column(t)));
    if (std::abs(raw) <= noise) continue;
    const double sign = raw > 0.0 ? 1.0 : -1.0;
    grad(t + 3) += scale * sign;
    grad(t + 2) -= 3.0 * scale * sign;
    grad(t + 1) += 3.0 * scale * sign;
    grad(t) -= scale * sign;
  }
  return grad;
}

OptimizationResult chomp_optimize(const Trajectory& y0, const BoxEnvironment& env,
                                  const ChompConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  require_one_dim(y0, "chomp");
  const BoundaryPins pins = BoundaryPins::from(y0, cfg.pin_start, cfg.pin_goal);
  const ScoreConfig score_cfg{.lambda_jerk = cfg.lambda_jerk};
  OptimizationResult result{.trajectory = y0, .trace = {}};
  for (std::size_t k = 0; k < cfg.iterations; ++k) {
    const auto start = Clock::now();
    CounterRng rng(seed, kChompStream + k, 0);
    const Eigen::VectorXd grad = chomp_gradient(result.trajectory, env, cfg, rng);
    result.trajectory = step(result.trajectory, grad, -cfg.step, pins);
    result.trace.push_back({.iteration = k,
                            .best_score = trajectory_score(env, result.trajectory, score_cfg),
                            .mean_weight = 0.0,
                            .estimator_norm = grad.norm(),
                            .feasible = is_collision_free(env, result.trajectory),
                            .wall_time = seconds_since(start)});
    ++result.iterations_used;
  }
  return result;
}

// ---------------------------------------------------------------------------
// MPPI

double MppiConfig::noise_for(const TimeGrid& grid) const {
  return noise_scale.value_or(0.1 * std::sqrt(grid.dt()));
}

void MppiConfig::validate() const {
  if (rollouts < 2) throw ConfigError("mppi: rollouts must be at least 2");
  if (iterations < 1) throw ConfigError("mppi: iterations must be at least 1");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw ConfigError("mppi: temperature must be positive");
  }
  if (noise_scale && !(*noise_scale >= 0.0)) {
    throw ConfigError("mppi: noise_scale must be non-negative");
  }
  if (!(weight_obs >= 0.0) || !(weight_goal >= 0.0)) {
    throw ConfigError("mppi: cost weights must be non-negative");
  }
  if (workers < 1) throw ConfigError("mppi: workers must be at least 1");
}

Eigen::VectorXd wiener_noise(std::uint64_t seed, std::uint64_t iteration, std::uint64_t rollout,
                             std::size_t steps, double noise_scale) {
  CounterRng rng(seed, kMppiStream + iteration, rollout);
  Eigen::VectorXd eps(static_cast<Eigen::Index>(steps));
  eps(0) = 0.0;
  for (Eigen::Index t = 1; t < eps.size(); ++t) eps(t) = eps(t - 1) + noise_scale * rng.normal();
  return eps;
}

double mppi_cost(const Trajectory& y, const BoxEnvironment& env, const MppiConfig& cfg) {
  const Eigen::VectorXd s = penetration_profile(env, y);
  const double goal_cost = (y.values().col(0).array() - cfg.goal).square().sum();
  return cfg.weight_obs * (-s.sum()) + cfg.weight_goal * goal_cost;
}

std::vector<double> mppi_weights(std::span<const double> costs, double temperature) {
  const double lowest = *std::min_element(costs.begin(), costs.end());
  std::vector<double> w(costs.size());
  double total = 0.0;
  for (std::size_t r = 0; r < costs.size(); ++r) {
    w[r] = std::exp(-(costs[r] - lowest) / temperature);
    total += w[r];
  }
  for (double& v : w) v /= total;
  return w;
}

OptimizationResult mppi_optimize(const Trajectory& y0, const BoxEnvironment& env,
                                 const MppiConfig& cfg, std::uint64_t seed,
                                 const ScoreConfig& score_cfg) {
  cfg.validate();
  require_one_dim(y0, "mppi");
  const double noise = cfg.noise_for(y0.grid());
  const BoundaryPins pins = BoundaryPins::from(y0, cfg.pin_start, cfg.pin_goal);
  OptimizationResult result{.trajectory = y0, .trace = {}};
  for (std::size_t k = 0; k < cfg.iterations; ++k) {
    const auto start = Clock::now();
    std::vector<Eigen::VectorXd> eps(cfg.rollouts);
    std::vector<double> costs(cfg.rollouts);
    std::vector<double> scores(cfg.rollouts);
    internal::parallel_for(cfg.rollouts, cfg.workers, [&](std::size_t r) {
      eps[r] = wiener_noise(seed, k, r, result.trajectory.steps(), noise);
      const Trajectory rollout = result.trajectory.shifted(eps[r]);
      costs[r] = mppi_cost(rollout, env, cfg);
      scores[r] = trajectory_score(env, rollout, score_cfg);
    });
    const std::vector<double> weights = mppi_weights(costs, cfg.temperature);
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(eps.front().size());
    for (std::size_t r = 0; r < cfg.rollouts; ++r) delta += weights[r] * eps[r];
    result.trajectory = step(result.trajectory, delta, 1.0, pins);
    result.trace.push_back({.iteration = k,
                            .best_score = *std::max_element(scores.begin(), scores.end()),
                            .mean_weight = 1.0 / static_cast<double>(cfg.rollouts),
                            .estimator_norm = delta.norm(),
                            .feasible = is_collision_free(env, result.trajectory),
                            .wall_time = seconds_since(start)});
    ++result.iterations_used;
  }
  return result;
}

}  // namespace nfg
