#include "nfg/sampler.h"

#include <cmath>
#include <numbers>

#include "nfg/errors.h"

namespace nfg {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t key = mix64(seed + kGolden);
  key = mix64(key ^ (stream + 0x632be59bd9b4e019ULL));
  key = mix64(key ^ (index + 0x8cb92ba72f3d8dd7ULL));
  state_ = key;
}

std::uint64_t CounterRng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double CounterRng::uniform() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

PerturbationSampler::PerturbationSampler(std::shared_ptr<const CovarianceFactor> factor,
                                         double sigma, std::uint64_t seed)
    : factor_(std::move(factor)), sigma_(sigma), seed_(seed) {
  if (!factor_) throw ConfigError("sampler needs a covariance factor");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("noise scale must be non-negative and finite");
  }
}

Eigen::MatrixXd PerturbationSampler::draw(std::uint64_t stream, std::uint64_t index,
                                          Eigen::Index dims) const {
  CounterRng rng(seed_, stream, index);
  const Eigen::Index m = factor_->size();
  Eigen::MatrixXd z(m, dims);
  for (Eigen::Index d = 0; d < dims; ++d) {
    for (Eigen::Index i = 0; i < m; ++i) z(i, d) = rng.normal();
  }
  Eigen::MatrixXd eps = factor_->lower().triangularView<Eigen::Lower>() * z;
  eps *= sigma_;
  return eps;
}

std::vector<Eigen::MatrixXd> PerturbationSampler::sample(std::uint64_t stream, std::size_t count,
                                                         Eigen::Index dims) const {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) out.push_back(draw(stream, s, dims));
  return out;
}

}  // namespace nfg
