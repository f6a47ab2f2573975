#include "nfg/time_grid.h"

#include <cmath>
#include <string>

#include "nfg/errors.h"

namespace nfg {

TimeGrid::TimeGrid(double horizon_seconds, double rate_hz)
    : horizon_seconds_(horizon_seconds), rate_hz_(rate_hz), steps_(0) {
  if (!(horizon_seconds > 0.0) || !std::isfinite(horizon_seconds)) {
    throw ConfigError("time grid horizon must be positive and finite");
  }
  if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) {
    throw ConfigError("time grid rate must be positive and finite");
  }
  const double exact = horizon_seconds * rate_hz;
  const double rounded = std::round(exact);
  if (std::abs(exact - rounded) > 1e-9 * std::max(1.0, exact)) {
    throw ConfigError("horizon * rate must be a whole number of steps, got " +
                      std::to_string(exact));
  }
  if (rounded < 4.0) {
    throw ConfigError("time grid needs at least 4 steps, got " +
                      std::to_string(rounded));
  }
  steps_ = static_cast<std::size_t>(rounded);
}

}  // namespace nfg
