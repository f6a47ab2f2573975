#pragma once

#include <cstddef>

namespace nfg {

// Uniform sampling of a fixed horizon [0, horizon). Grid point i sits at
// t_i = i / rate_hz, so the first sample is t = 0 and the last is
// horizon - dt.
class TimeGrid {
 public:
  // Throws ConfigError unless horizon * rate is a whole number of steps >= 4.
  TimeGrid(double horizon_seconds, double rate_hz);

  double horizon_seconds() const { return horizon_seconds_; }
  double rate_hz() const { return rate_hz_; }
  std::size_t steps() const { return steps_; }
  double dt() const { return 1.0 / rate_hz_; }

  // Division rather than i * dt so that times coincide with decimal
  // literals (20 / 100.0 == 0.2 exactly).
  double time(std::size_t i) const { return static_cast<double>(i) / rate_hz_; }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double horizon_seconds_;
  double rate_hz_;
  std::size_t steps_;
};

}  // namespace nfg
