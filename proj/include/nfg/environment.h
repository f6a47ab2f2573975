#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace nfg {

// Axis-aligned obstacle [t_lo, t_hi] x [y_lo, y_hi] in the (time, value)
// plane. Containment is closed on every face.
struct BoxObstacle {
  double t_lo;
  double t_hi;
  double y_lo;
  double y_hi;

  BoxObstacle(double t_lo, double t_hi, double y_lo, double y_hi);

  bool contains(double t, double y) const {
    return t >= t_lo && t <= t_hi && y >= y_lo && y <= y_hi;
  }
  // -min(y - y_lo, y_hi - y): zero on the faces, negative inside.
  double depth(double y) const;
};

class BoxEnvironment {
 public:
  BoxEnvironment() = default;
  explicit BoxEnvironment(std::vector<BoxObstacle> boxes) : boxes_(std::move(boxes)) {}

  const std::vector<BoxObstacle>& boxes() const { return boxes_; }
  bool empty() const { return boxes_.empty(); }

  // Copy with one more obstacle.
  BoxEnvironment with(const BoxObstacle& box) const;

 private:
  std::vector<BoxObstacle> boxes_;
};

// Built-in environments: "narrow-passage-v1" (four boxes forming a
// time-fragmented corridor over t in [0, 1]) and "free-space" (no boxes).
// Throws ConfigError for unknown names.
BoxEnvironment environment_preset(std::string_view name);
std::vector<std::string> environment_preset_names();

// Most negative depth over boxes containing (t, y); 0 when none does.
double penetration_step(const BoxEnvironment& env, double t, double y);

}  // namespace nfg
