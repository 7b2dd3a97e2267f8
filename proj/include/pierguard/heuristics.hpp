#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pierguard/grid_map.hpp"
#include "pierguard/rng.hpp"

namespace pierguard {

/// Per-voxel probability that the optimal path passes through the voxel.
/// Voxels at or above `threshold` are active and eligible for biased sampling.
class HeuristicRegion {
 public:
  /// Throws std::invalid_argument on size mismatch, a probability outside
  /// [0, 1] or a threshold outside (0, 1).
  HeuristicRegion(Index3 dims, std::vector<float> probs, double threshold = 0.5);

  /// 1.0 wherever `mask` is nonzero, 0.0 elsewhere.
  static HeuristicRegion fromMask(const LabelGrid& mask, double threshold = 0.5);
  static HeuristicRegion empty(Index3 dims, double threshold = 0.5);

  const Index3& dims() const { return dims_; }
  double threshold() const { return threshold_; }
  std::span<const float> probs() const { return probs_; }
  /// Linear voxel indices with prob >= threshold, ascending.
  std::span<const std::int64_t> activeVoxels() const { return active_; }
  bool hasActiveVoxels() const { return !active_.empty(); }

  /// Index into activeVoxels() drawn proportionally to probability.
  std::size_t drawWeighted(Rng& rng) const;

  bool operator==(const HeuristicRegion& o) const {
    return dims_ == o.dims_ && threshold_ == o.threshold_ && probs_ == o.probs_;
  }

 private:
  Index3 dims_;
  std::vector<float> probs_;
  double threshold_;
  std::vector<std::int64_t> active_;
  std::vector<double> cumulative_;
};

// PHEUR layout: "PHEUR\x01", u32 LE dims x/y/z, f64 LE threshold, then one
// f32 LE probability per voxel, x fastest.
std::vector<std::uint8_t> saveRegion(const HeuristicRegion& region);
/// Throws FormatError on bad magic, truncation, trailing bytes or invalid values.
HeuristicRegion loadRegion(std::span<const std::uint8_t> bytes);

enum class RegionSampling {
  kWeighted,     // voxel chosen proportionally to its probability
  kUniformMask,  // every active voxel equally likely
};

enum class SampleSource : std::uint8_t {
  kUniform,   // Rand() < mu branch
  kRegion,    // drawn from the heuristic region
  kFallback,  // region branch with an empty region, served uniformly
  kInformed,  // prolate-spheroid sampler
};

const char* toString(SampleSource source);

/// Uniform over the grid's world bounding box.
Vec3 sampleUniform(const OccupancyGrid& grid, Rng& rng);

/// Active voxel (weighted or uniform over the mask), then a uniform point in it.
/// Throws EmptyRegionError without active voxels.
Vec3 sampleRegion(const HeuristicRegion& region, const OccupancyGrid& grid, Rng& rng,
                  RegionSampling mode = RegionSampling::kWeighted);

struct BiasedSample {
  Vec3 point;
  SampleSource source;
};

/// With probability mu a uniform sample, otherwise a region sample. An empty
/// region falls back to uniform when `fallback` is set, else throws
/// EmptyRegionError.
BiasedSample neuralSample(const HeuristicRegion& region, const OccupancyGrid& grid, double mu, Rng& rng,
                          RegionSampling mode = RegionSampling::kWeighted, bool fallback = true);

/// Prolate spheroid {p : |p - focus1| + |p - focus2| <= c_best}.
struct InformedSet {
  Vec3 focus1;
  Vec3 focus2;
  double c_best = 0.0;
  double c_min = 0.0;

  static InformedSet between(const Vec3& f1, const Vec3& f2, double c_best) {
    return {f1, f2, c_best, distance(f1, f2)};
  }
};

/// Uniform sample inside the spheroid. Throws std::invalid_argument when
/// c_best is not finite or c_best < c_min.
Vec3 sampleInformed(const InformedSet& set, Rng& rng);

}  // namespace pierguard
