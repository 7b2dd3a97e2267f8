#include "pierguard/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "byte_io.hpp"
#include "pierguard/errors.hpp"

namespace pierguard {

HeuristicRegion::HeuristicRegion(Index3 dims, std::vector<float> probs, double threshold)
    : dims_(dims), probs_(std::move(probs)), threshold_(threshold) {
  if (dims.x <= 0 || dims.y <= 0 || dims.z <= 0) throw std::invalid_argument("region dims must be positive");
  if (static_cast<std::int64_t>(probs_.size()) != dims.volume()) {
    throw std::invalid_argument("probability count does not match dims");
  }
  if (!(threshold > 0.0 && threshold < 1.0)) throw std::invalid_argument("threshold must lie in (0, 1)");
  double total = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const float p = probs_[i];
    if (!(p >= 0.0f && p <= 1.0f)) throw std::invalid_argument("probability outside [0, 1]");
    if (static_cast<double>(p) >= threshold_) {
      active_.push_back(static_cast<std::int64_t>(i));
      total += p;
      cumulative_.push_back(total);
    }
  }
}

HeuristicRegion HeuristicRegion::fromMask(const LabelGrid& mask, double threshold) {
  std::vector<float> probs(mask.values.size());
  std::transform(mask.values.begin(), mask.values.end(), probs.begin(),
                 [](std::uint8_t v) { return v != 0 ? 1.0f : 0.0f; });
  return HeuristicRegion(mask.dims, std::move(probs), threshold);
}

HeuristicRegion HeuristicRegion::empty(Index3 dims, double threshold) {
  return HeuristicRegion(dims, std::vector<float>(static_cast<std::size_t>(dims.volume()), 0.0f), threshold);
}

std::size_t HeuristicRegion::drawWeighted(Rng& rng) const {
  if (active_.empty()) throw EmptyRegionError("heuristic region has no active voxels");
  const double u = rng.uniform01() * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min(static_cast<std::size_t>(it - cumulative_.begin()), active_.size() - 1);
}

namespace {
constexpr std::string_view kPheurMagic{"PHEUR\x01", 6};
}

std::vector<std::uint8_t> saveRegion(const HeuristicRegion& region) {
  detail::ByteWriter w;
  w.raw(kPheurMagic);
  w.u32(static_cast<std::uint32_t>(region.dims().x));
  w.u32(static_cast<std::uint32_t>(region.dims().y));
  w.u32(static_cast<std::uint32_t>(region.dims().z));
  w.f64(region.threshold());
  for (float p : region.probs()) w.f32(p);
  return w.take();
}

HeuristicRegion loadRegion(std::span<const std::uint8_t> bytes) {
  detail::ByteReader r(bytes, "PHEUR");
  r.expectMagic(kPheurMagic);
  const std::uint32_t dx = r.u32();
  const std::uint32_t dy = r.u32();
  const std::uint32_t dz = r.u32();
  const double threshold = r.f64();
  if (dx == 0 || dy == 0 || dz == 0 || dx > 1u << 20 || dy > 1u << 20 || dz > 1u << 20) r.fail("invalid dims");
  if (!(threshold > 0.0 && threshold < 1.0)) r.fail("threshold outside (0, 1)");
  const std::uint64_t count = std::uint64_t{dx} * dy * dz;
  if (count > r.remaining() / 4) r.fail("truncated payload");
  std::vector<float> probs(static_cast<std::size_t>(count));
  for (auto& p : probs) {
    p = r.f32();
    if (!(p >= 0.0f && p <= 1.0f)) r.fail("probability outside [0, 1]");
  }
  if (r.remaining() != 0) r.fail("trailing bytes");
  return HeuristicRegion({static_cast<int>(dx), static_cast<int>(dy), static_cast<int>(dz)}, std::move(probs),
                         threshold);
}

const char* toString(SampleSource source) {
  switch (source) {
    case SampleSource::kUniform: return "uniform";
    case SampleSource::kRegion: return "region";
    case SampleSource::kFallback: return "fallback";
    case SampleSource::kInformed: return "informed";
  }
  return "unknown";
}

Vec3 sampleUniform(const OccupancyGrid& grid, Rng& rng) {
  const Vec3 ext = grid.extent();
  const double x = rng.uniform(0.0, ext.x);
  const double y = rng.uniform(0.0, ext.y);
  const double z = rng.uniform(0.0, ext.z);
  return {x, y, z};
}

Vec3 sampleRegion(const HeuristicRegion& region, const OccupancyGrid& grid, Rng& rng, RegionSampling mode) {
  if (!region.hasActiveVoxels()) throw EmptyRegionError("heuristic region has no active voxels");
  const auto active = region.activeVoxels();
  const std::size_t pick =
      mode == RegionSampling::kWeighted ? region.drawWeighted(rng) : static_cast<std::size_t>(rng.below(active.size()));
  const Index3 v = grid.fromLinear(active[pick]);
  const double vs = grid.voxelSize();
  const double x = (v.x + rng.uniform01()) * vs;
  const double y = (v.y + rng.uniform01()) * vs;
  const double z = (v.z + rng.uniform01()) * vs;
  return {x, y, z};
}

BiasedSample neuralSample(const HeuristicRegion& region, const OccupancyGrid& grid, double mu, Rng& rng,
                          RegionSampling mode, bool fallback) {
  if (rng.uniform01() < mu) return {sampleUniform(grid, rng), SampleSource::kUniform};
  if (!region.hasActiveVoxels()) {
    if (!fallback) throw EmptyRegionError("heuristic region has no active voxels");
    return {sampleUniform(grid, rng), SampleSource::kFallback};
  }
  return {sampleRegion(region, grid, rng, mode), SampleSource::kRegion};
}

Vec3 sampleInformed(const InformedSet& set, Rng& rng) {
  if (!std::isfinite(set.c_best)) throw std::invalid_argument("informed sampling needs a finite c_best");
  if (set.c_best < set.c_min) throw std::invalid_argument("c_best is below the focal distance");

  // Uniform point in the unit ball by rejection from the cube.
  Vec3 ball;
  do {
    ball = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  } while (ball.squaredNorm() > 1.0);

  const double major = 0.5 * set.c_best;
  const double minor = 0.5 * std::sqrt(std::max(0.0, set.c_best * set.c_best - set.c_min * set.c_min));

  // Orthonormal frame with the first axis along the focal line.
  const Vec3 axis = unitDirection(set.focus1, set.focus2).value_or(Vec3{1.0, 0.0, 0.0});
  const Vec3 helper = std::abs(axis.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  auto cross = [](const Vec3& a, const Vec3& b) {
    return Vec3{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
  };
  Vec3 u = cross(axis, helper);
  u = u / u.norm();
  const Vec3 w = cross(axis, u);

  const Vec3 center = (set.focus1 + set.focus2) * 0.5;
  return center + axis * (major * ball.x) + u * (minor * ball.y) + w * (minor * ball.z);
}

}  // namespace pierguard
