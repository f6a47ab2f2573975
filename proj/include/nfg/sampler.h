#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "nfg/kernel.h"

namespace nfg {

// Counter-based generator: the whole stream is a pure function of
// (seed, stream, index), so any draw can be reproduced without replaying
// the draws before it. SplitMix64 output function over a hashed key.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

  std::uint64_t next_u64();
  // Uniform in (0, 1].
  double uniform();
  double normal();

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Draws smooth perturbations eps = sigma * L * z, z ~ N(0, I). A
// d-dimensional perturbation uses an independent z per column with the same
// temporal factor. Draw (stream, index) is fixed by the seed regardless of
// call order.
class PerturbationSampler {
 public:
  PerturbationSampler(std::shared_ptr<const CovarianceFactor> factor, double sigma,
                      std::uint64_t seed);

  const CovarianceFactor& factor() const { return *factor_; }
  std::shared_ptr<const CovarianceFactor> shared_factor() const { return factor_; }
  double sigma() const { return sigma_; }
  std::uint64_t seed() const { return seed_; }

  Eigen::MatrixXd draw(std::uint64_t stream, std::uint64_t index, Eigen::Index dims = 1) const;

  // Draws indices 0..count-1 of the given stream.
  std::vector<Eigen::MatrixXd> sample(std::uint64_t stream, std::size_t count,
                                      Eigen::Index dims = 1) const;

 private:
  std::shared_ptr<const CovarianceFactor> factor_;
  double sigma_;
  std::uint64_t seed_;
};

}  // namespace nfg
