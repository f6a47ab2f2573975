#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nfg/environment.h"
#include "nfg/sampler.h"
#include "nfg/score.h"
#include "nfg/trace.h"
#include "nfg/trajectory.h"

namespace nfg {

// ---------------------------------------------------------------------------
// STOMP-style stochastic reweighting on J = 1 - f. Perturbations come from
// the same PerturbationSampler (same factor, same sigma) as NFG.

struct StompConfig {
  std::size_t batch = 100;
  std::size_t iterations = 100;
  double temperature = 10.0;  // h
  bool pin_start = true;
  bool pin_goal = false;
  std::size_t workers = 1;

  void validate() const;
};

// w_s = exp(-h (J_s - J_min) / (J_max - J_min + 1e-12)), normalized to sum 1.
std::vector<double> stomp_weights(std::span<const double> costs, double temperature);

struct StompUpdate {
  Trajectory trajectory;
  std::vector<double> weights;
  double best_score = 0.0;
  double update_norm = 0.0;
};

// y + sum_s w_s eps_s using perturbation stream `iteration`.
StompUpdate stomp_iterate(const Trajectory& y, const BoxEnvironment& env,
                          const ScoreConfig& score_cfg, const StompConfig& cfg,
                          const PerturbationSampler& sampler, std::size_t iteration,
                          const BoundaryPins& pins = {});

OptimizationResult stomp_optimize(const Trajectory& y0, const BoxEnvironment& env,
                                  const ScoreConfig& score_cfg, const StompConfig& cfg,
                                  const PerturbationSampler& sampler);

// ---------------------------------------------------------------------------
// CHOMP-style analytic gradient descent on J = 1 - f.

struct ChompConfig {
  std::size_t iterations = 100;
  double step = 1.0;
  double lambda_jerk = 1e-4;
  bool pin_start = true;
  bool pin_goal = false;

  void validate() const;
};

// Gradient of J for a 1-D trajectory.
//
// Colliding: only the deepest-penetration region contributes, i.e. the
// contiguous run of colliding grid points containing the first global
// minimum of s_t. There dJ/dy_t = -n_t / L, where n_t = +-1 points toward
// the nearer face of the box that sets s_t. A point exactly at a box
// midpoint takes a random sign, drawn once per call and shared by all tied
// points of the region.
//
// Collision-free: dJ/dy = lambda exp(-lambda Jbar) dJbar/dy, with
// dJbar/dy = A^T sign(A y) / (dt^3 (L - 3)) for the third-difference
// stencil A.
Eigen::VectorXd chomp_gradient(const Trajectory& y, const BoxEnvironment& env,
                               const ChompConfig& cfg, CounterRng& rng);

// y <- y - step * gradient. Deterministic except for midpoint ties.
OptimizationResult chomp_optimize(const Trajectory& y0, const BoxEnvironment& env,
                                  const ChompConfig& cfg, std::uint64_t seed);

// ---------------------------------------------------------------------------
// MPPI-style rollout reweighting with Wiener-process perturbations.

struct MppiConfig {
  std::size_t rollouts = 100;
  std::size_t iterations = 100;
  double temperature = 1.0;
  // Standard deviation of each increment; defaults to 0.1 * sqrt(dt).
  std::optional<double> noise_scale;
  double goal = 0.0;
  double weight_obs = 1.0;
  double weight_goal = 1.0;
  bool pin_start = true;
  bool pin_goal = false;
  std::size_t workers = 1;

  double noise_for(const TimeGrid& grid) const;
  void validate() const;
};

// eps_0 = 0, eps_t = eps_{t-1} + noise_scale * z_t.
Eigen::VectorXd wiener_noise(std::uint64_t seed, std::uint64_t iteration, std::uint64_t rollout,
                             std::size_t steps, double noise_scale);

// weight_obs * sum_t (-s_t) + weight_goal * sum_t (y_t - goal)^2.
double mppi_cost(const Trajectory& y, const BoxEnvironment& env, const MppiConfig& cfg);

// Softmin: w_r = exp(-(J_r - J_min) / temperature), normalized to sum 1.
std::vector<double> mppi_weights(std::span<const double> costs, double temperature);

// Whole-horizon iterated MPPI. score_cfg only feeds the trace.
OptimizationResult mppi_optimize(const Trajectory& y0, const BoxEnvironment& env,
                                 const MppiConfig& cfg, std::uint64_t seed,
                                 const ScoreConfig& score_cfg = {});

}  // namespace nfg
