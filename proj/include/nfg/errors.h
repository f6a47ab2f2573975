#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nfg {

// Invalid or inconsistent configuration (bad parameters, unknown names,
// mismatched shapes supplied by the caller).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was called on an input that violates its precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Waypoint path with zero total arc length, or too few waypoints.
class DegeneratePathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every sample in a Monte-Carlo batch received zero weight.
class DegenerateBatchError : public std::runtime_error {
 public:
  explicit DegenerateBatchError(std::size_t iteration)
      : std::runtime_error("all sample weights are zero at iteration " +
                           std::to_string(iteration)),
        iteration_(iteration) {}

  std::size_t iteration() const { return iteration_; }

 private:
  std::size_t iteration_;
};

// Malformed input file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nfg
