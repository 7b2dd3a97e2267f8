#pragma once

#include <stdexcept>
#include <string>

namespace pierguard {

/// Start or goal lies outside the grid or inside an obstacle.
class InvalidProblem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Grid search exhausted the reachable space without touching the goal.
class NoPathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed PGRID / PHEUR / PSAMP payload.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Heuristic region has no voxel at or above its threshold.
class EmptyRegionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pierguard
