#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pierguard/cost_geometry.hpp"
#include "pierguard/vec3.hpp"

namespace pierguard {

/// Dense 3D byte grid; x varies fastest. Container for occupancy, start/goal
/// channels and region labels.
struct LabelGrid {
  Index3 dims;
  double voxel_size = 1.0;
  std::vector<std::uint8_t> values;

  bool operator==(const LabelGrid&) const = default;
};

/// Dense voxel occupancy map. Voxel (i,j,k) covers the half-open box
/// [i,i+1) x [j,j+1) x [k,k+1) scaled by voxel_size. Anything outside the
/// grid is treated as occupied.
class OccupancyGrid {
 public:
  /// All-free grid. Throws std::invalid_argument on a zero-volume extent or
  /// a nonpositive voxel size.
  explicit OccupancyGrid(Index3 dims, double voxel_size = 1.0);

  /// Builds from 0/1 cells; throws std::invalid_argument on size mismatch.
  OccupancyGrid(Index3 dims, double voxel_size, std::vector<std::uint8_t> cells);

  const Index3& dims() const { return dims_; }
  double voxelSize() const { return voxel_size_; }
  std::span<const std::uint8_t> cells() const { return cells_; }
  std::int64_t voxelCount() const { return static_cast<std::int64_t>(cells_.size()); }

  bool inBounds(const Index3& v) const {
    return v.x >= 0 && v.y >= 0 && v.z >= 0 && v.x < dims_.x && v.y < dims_.y && v.z < dims_.z;
  }
  std::int64_t linearIndex(const Index3& v) const {
    return (static_cast<std::int64_t>(v.z) * dims_.y + v.y) * dims_.x + v.x;
  }
  Index3 fromLinear(std::int64_t i) const {
    const auto x = static_cast<int>(i % dims_.x);
    const auto rest = i / dims_.x;
    return {x, static_cast<int>(rest % dims_.y), static_cast<int>(rest / dims_.y)};
  }

  /// Caller guarantees inBounds(v).
  bool occupied(const Index3& v) const { return cells_[static_cast<std::size_t>(linearIndex(v))] != 0; }
  void setOccupied(const Index3& v, bool value = true) {
    cells_[static_cast<std::size_t>(linearIndex(v))] = value ? 1 : 0;
  }

  /// In-bounds and unoccupied.
  bool voxelFree(const Index3& v) const { return inBounds(v) && !occupied(v); }

  /// Voxel containing p, or nullopt when p is outside the grid.
  std::optional<Index3> voxelOf(const Vec3& p) const;
  Vec3 voxelCenter(const Index3& v) const {
    return {(v.x + 0.5) * voxel_size_, (v.y + 0.5) * voxel_size_, (v.z + 0.5) * voxel_size_};
  }
  /// World-space upper corner; the lower corner is the origin.
  Vec3 extent() const { return {dims_.x * voxel_size_, dims_.y * voxel_size_, dims_.z * voxel_size_}; }

  std::int64_t occupiedCount() const;
  double occupiedFraction() const {
    return static_cast<double>(occupiedCount()) / static_cast<double>(voxelCount());
  }

  LabelGrid toLabels() const { return {dims_, voxel_size_, cells_}; }
  static OccupancyGrid fromLabels(const LabelGrid& labels);

  bool operator==(const OccupancyGrid&) const = default;

 private:
  Index3 dims_;
  double voxel_size_;
  std::vector<std::uint8_t> cells_;
};

/// (grid, start, goal, goal radius, cost weights).
struct PlanningProblem {
  OccupancyGrid grid;
  Vec3 x_init;
  Vec3 x_goal;
  double goal_radius = 1.5;
  CostParams cost_params;

  /// Throws InvalidProblem when start/goal are out of bounds or occupied or
  /// the goal radius is not positive; std::invalid_argument for bad cost weights.
  void validate() const;
};

bool isStateFree(const OccupancyGrid& grid, const Vec3& p);

/// Checks interpolated points at spacing <= voxel_size/2 along [a, b],
/// endpoints included. Symmetric in (a, b).
bool segmentFree(const OccupancyGrid& grid, const Vec3& a, const Vec3& b);

/// Lebesgue measure of free space: free voxel count times voxel volume.
double freeMeasure(const OccupancyGrid& grid);

/// Start/goal channel (1 at x_init's voxel, 2 at x_goal's) and the 0/1 occupancy channel.
/// Throws InvalidProblem if either endpoint voxel is occupied or out of bounds.
std::pair<LabelGrid, LabelGrid> encodeProblemGrids(const PlanningProblem& problem);

// --- procedural maps ---------------------------------------------------------

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct SphereObstacle {
  Vec3 center;
  double radius = 0.0;
};

/// Vertical cylinder standing on z = 0.
struct CylinderObstacle {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.0;
  double height = 0.0;
};

struct ObstacleSet {
  std::vector<SphereObstacle> spheres;
  std::vector<CylinderObstacle> cylinders;
};

/// Ball-shaped obstacles whose top (center.z + radius) lies in top_height.
struct SphereFieldParams {
  int count = 0;
  Range radius{0.4, 2.5};
  Range top_height{0.5, 7.5};
};

/// Pier-pillar style cylinders grounded at z = 0.
struct CylinderFieldParams {
  int count = 0;
  Range radius{1.0, 2.5};
  Range height{5.5, 10.5};
};

/// Multiplies every length range by `scale`.
SphereFieldParams scaled(SphereFieldParams p, double scale);
CylinderFieldParams scaled(CylinderFieldParams p, double scale);

/// Marks every voxel whose center lies inside an obstacle (boundary inclusive).
void rasterize(OccupancyGrid& grid, const ObstacleSet& obstacles);

/// Draws obstacle parameters; pure function of its arguments. Throws
/// std::invalid_argument on zero-volume dims, negative counts or inverted ranges.
ObstacleSet sampleObstacles(Index3 dims, double voxel_size, const SphereFieldParams& spheres,
                            const CylinderFieldParams& cylinders, std::uint64_t seed);

OccupancyGrid generateMapSpheres(Index3 dims, const SphereFieldParams& spheres, std::uint64_t seed,
                                 double voxel_size = 1.0);

OccupancyGrid generateMapCylinders(Index3 dims, const SphereFieldParams& spheres,
                                   const CylinderFieldParams& cylinders, std::uint64_t seed,
                                   double voxel_size = 1.0);

/// Keeps adding spheres (centers anywhere in the volume) until the occupied
/// fraction reaches `density`. Spheres whose surface comes within `clearance`
/// of any keep_clear point are rejected and redrawn.
OccupancyGrid generateMapDensity(Index3 dims, double density, Range radius, std::uint64_t seed,
                                 std::span<const Vec3> keep_clear = {}, double clearance = 0.0,
                                 double voxel_size = 1.0);

}  // namespace pierguard
