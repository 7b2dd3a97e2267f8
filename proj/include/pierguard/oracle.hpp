#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "pierguard/grid_map.hpp"

namespace pierguard {

/// 26-connected voxel path. cost is the Euclidean length between voxel
/// centers in world units.
struct GridPath {
  std::vector<Index3> voxels;
  double cost = 0.0;
};

/// Length of a path made of `axial` unit steps, `planar` face-diagonal steps
/// and `cubic` body-diagonal steps. Evaluated in a fixed order so that two
/// searches agreeing on the step counts agree bit-exactly on the cost.
double stepCountCost(std::int64_t axial, std::int64_t planar, std::int64_t cubic, double voxel_size);

/// Cost of a 26-connected voxel sequence via stepCountCost. Throws
/// std::invalid_argument when consecutive voxels are not 26-neighbours.
double gridPathCost(std::span<const Index3> voxels, double voxel_size);

/// Optimal 26-connected A* with the Euclidean heuristic. Ties on f are
/// broken by smaller h, then by insertion order. Throws InvalidProblem if an
/// endpoint is blocked and NoPathError if the goal is unreachable.
GridPath astarPlan(const OccupancyGrid& grid, const Index3& start, const Index3& goal);

/// Exhaustive uniform-cost search; independent check on astarPlan.
double dijkstraOracle(const OccupancyGrid& grid, const Index3& start, const Index3& goal);

/// Free voxels within Chebyshev distance `radius_voxels` of any path voxel,
/// as a 0/1 label grid. Throws std::invalid_argument for radius < 1.
LabelGrid dilatePath(const GridPath& path, const OccupancyGrid& grid, int radius_voxels = 2);

/// (start/goal channel, occupancy channel) -> dilated A* label.
struct TrainingSample {
  LabelGrid e1;
  LabelGrid e2;
  LabelGrid label;

  bool operator==(const TrainingSample&) const = default;
};

TrainingSample makeTrainingSample(const PlanningProblem& problem, int dilation_radius = 2);

// PSAMP layout: "PSAMP\x01", u32 LE count (= 3), then three PGRID payloads
// in the order e1, e2, label.
std::vector<std::uint8_t> encodeSample(const TrainingSample& sample);
TrainingSample decodeSample(std::span<const std::uint8_t> bytes);

struct DatasetManifest {
  std::vector<std::string> files;
  std::uint64_t seed = 0;
  int dilation_radius = 2;
};

/// Writes manifest.json next to the sample files in `dir`.
void writeManifest(const std::filesystem::path& dir, const DatasetManifest& manifest);
DatasetManifest readManifest(const std::filesystem::path& dir);

}  // namespace pierguard
