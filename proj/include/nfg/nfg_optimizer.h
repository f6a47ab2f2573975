#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "nfg/environment.h"
#include "nfg/sampler.h"
#include "nfg/score.h"
#include "nfg/trace.h"
#include "nfg/trajectory.h"

namespace nfg {

// Black-box objective f(xi); higher is better. May return -infinity for
// trajectories outside the feasible set.
using ScoreFunction = std::function<double(const Trajectory&)>;
using FeasibilityFunction = std::function<bool(const Trajectory&)>;
// Objective over raw values, for point sets that are not on a TimeGrid.
using ValueFunction = std::function<double(const Eigen::MatrixXd&)>;

enum class WeightMode {
  kRaw,      // w = exp(n_pow * f), exponent clamped to +-700
  kShifted,  // w = exp(n_pow * (f - max_s f)) per batch
};

struct NfgConfig {
  double sigma = 1.0;
  double n_pow = 100.0;
  std::size_t batch = 100;
  std::size_t iterations = 100;
  // One entry means a constant step; otherwise one entry per iteration.
  std::vector<double> step_sizes{0.1};
  // Step along direction / (||direction|| + 1e-12) instead of the raw
  // estimate.
  bool normalize_step = true;
  bool early_stop = false;
  WeightMode weight_mode = WeightMode::kShifted;
  bool pin_start = true;
  bool pin_goal = false;
  // Threads used to score the samples of one batch. Results do not depend
  // on this value.
  std::size_t workers = 1;

  double step_size(std::size_t iteration) const;
  void validate() const;
};

struct GradientEstimate {
  Eigen::MatrixXd direction;  // same shape as the trajectory values
  double best_score = 0.0;
  double mean_weight = 0.0;
  double norm = 0.0;
};

// (1 / (B sigma^2)) * sum_s w_s * eps_s over the B perturbations of stream
// `iteration`. In shifted mode the result is the raw estimate times
// exp(-n_pow * max_s f_s). Throws DegenerateBatchError when every weight
// is zero and ConfigError when the sampler does not match mu or cfg.
GradientEstimate estimate_gradient(const Eigen::MatrixXd& mu, const ValueFunction& objective,
                                   const PerturbationSampler& sampler, const NfgConfig& cfg,
                                   std::size_t iteration);

GradientEstimate estimate_gradient(const Trajectory& mu, const ScoreFunction& objective,
                                   const PerturbationSampler& sampler, const NfgConfig& cfg,
                                   std::size_t iteration);

GradientEstimate estimate_gradient(const Trajectory& mu, const BoxEnvironment& env,
                                   const ScoreConfig& score_cfg,
                                   const PerturbationSampler& sampler, const NfgConfig& cfg,
                                   std::size_t iteration);

// mu + eta * direction, then boundary pins.
Trajectory step(const Trajectory& mu, const Eigen::MatrixXd& direction, double eta,
                const BoundaryPins& pins = {});

// Natural functional gradient ascent. With early_stop the loop ends before
// the first iteration whose current mean is feasible. A degenerate batch is
// recorded in the trace and skipped.
OptimizationResult optimize(const Trajectory& mu0, const ScoreFunction& objective,
                            const PerturbationSampler& sampler, const NfgConfig& cfg,
                            const FeasibilityFunction& feasible = {});

OptimizationResult optimize(const Trajectory& mu0, const BoxEnvironment& env,
                            const ScoreConfig& score_cfg, const PerturbationSampler& sampler,
                            const NfgConfig& cfg);

}  // namespace nfg
