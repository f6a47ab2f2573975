#include "nfg/environment.h"

#include <algorithm>
#include <cmath>

#include "nfg/errors.h"

namespace nfg {

BoxObstacle::BoxObstacle(double t_lo, double t_hi, double y_lo, double y_hi)
    : t_lo(t_lo), t_hi(t_hi), y_lo(y_lo), y_hi(y_hi) {
  if (!(t_lo < t_hi) || !(y_lo < y_hi) || !std::isfinite(t_lo) || !std::isfinite(t_hi) ||
      !std::isfinite(y_lo) || !std::isfinite(y_hi)) {
    throw ConfigError("box obstacle needs t_lo < t_hi and y_lo < y_hi");
  }
}

double BoxObstacle::depth(double y) const { return -std::min(y - y_lo, y_hi - y); }

BoxEnvironment BoxEnvironment::with(const BoxObstacle& box) const {
  auto boxes = boxes_;
  boxes.push_back(box);
  return BoxEnvironment(std::move(boxes));
}

BoxEnvironment environment_preset(std::string_view name) {
  if (name == "narrow-passage-v1") {
    return BoxEnvironment({
        BoxObstacle(0.2, 0.25, -1.0, 4.0),
        BoxObstacle(0.4, 0.6, -2.0, 2.0),
        BoxObstacle(0.7, 1.0, 0.5, 5.0),
        BoxObstacle(0.7, 1.0, -5.0, -0.5),
    });
  }
  if (name == "free-space") return BoxEnvironment();
  throw ConfigError("unknown environment preset '" + std::string(name) + "'");
}

std::vector<std::string> environment_preset_names() {
  return {"narrow-passage-v1", "free-space"};
}

double penetration_step(const BoxEnvironment& env, double t, double y) {
  double score = 0.0;
  for (const auto& box : env.boxes()) {
    if (box.contains(t, y)) score = std::min(score, box.depth(y));
  }
  return score;
}

}  // namespace nfg
