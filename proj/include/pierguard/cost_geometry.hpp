#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pierguard/vec3.hpp"

namespace pierguard {

/// Weights of the edge cost: distance term and turning term (per radian).
struct CostParams {
  double beta1 = 1.0;
  double beta2 = 0.0;

  /// Throws std::invalid_argument unless beta1 > 0 and beta2 >= 0.
  void validate() const;
};

/// A position together with the direction it was reached from.
/// incoming_dir is empty at a tree root.
struct DirectedState {
  Vec3 position;
  std::optional<Vec3> incoming_dir;
};

/// Unit vector from `from` to `to`, or nullopt for a zero-length segment.
std::optional<Vec3> unitDirection(const Vec3& from, const Vec3& to);

/// beta1 * |to - from| + beta2 * turn angle between incoming_dir and the new segment.
/// The turn term is zero at a root and for zero-length segments.
double edgeCost(const CostParams& params, const DirectedState& from, const Vec3& to);

/// Sum of edge costs along the waypoints; the first segment has no incoming direction.
/// Throws std::invalid_argument for fewer than two waypoints.
double pathCost(const CostParams& params, std::span<const Vec3> waypoints);

/// Admissible lower bound on the remaining cost: beta1 * |goal - p|.
double costToGo(const CostParams& params, const Vec3& p, const Vec3& goal);

/// Volume of the unit ball in `dimension` dimensions.
double unitBallVolume(int dimension);

/// Scale factor gamma of the asymptotic-optimality radius condition, with slack epsilon.
double rrtStarGamma(int dimension, double free_measure, double epsilon = 0.1);

/// Connection radius min(step_cap, gamma * (log n / n)^(1/m)).
/// n == 1 yields step_cap. Throws std::invalid_argument for n == 0, m < 2 or
/// a nonpositive free measure.
double rrtStarRadius(int dimension, double free_measure, std::size_t n, double step_cap);

/// Exact symmetric Hausdorff distance between two finite point sets, O(|A||B|).
/// Throws std::invalid_argument if either set is empty.
double hausdorffDistance(std::span<const Vec3> a, std::span<const Vec3> b);

}  // namespace pierguard
