#include "pierguard/grid_map.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "pierguard/errors.hpp"
#include "pierguard/rng.hpp"

namespace pierguard {

namespace {

void checkDims(const Index3& dims) {
  if (dims.x <= 0 || dims.y <= 0 || dims.z <= 0) {
    throw std::invalid_argument("grid dims must be positive");
  }
}

void checkRange(const Range& r, const char* what) {
  if (!(r.lo <= r.hi)) throw std::invalid_argument(std::string("inverted range: ") + what);
}

int floorToInt(double v) { return static_cast<int>(std::floor(v)); }

// Marks voxels of the axis-aligned box [lo, hi] (world units) whose centers satisfy `inside`.
// Returns the number of voxels newly marked.
template <typename Pred>
std::int64_t markBox(OccupancyGrid& grid, const Vec3& lo, const Vec3& hi, Pred inside) {
  const double vs = grid.voxelSize();
  const Index3& d = grid.dims();
  const int x0 = std::max(0, floorToInt(lo.x / vs));
  const int y0 = std::max(0, floorToInt(lo.y / vs));
  const int z0 = std::max(0, floorToInt(lo.z / vs));
  const int x1 = std::min(d.x - 1, floorToInt(hi.x / vs));
  const int y1 = std::min(d.y - 1, floorToInt(hi.y / vs));
  const int z1 = std::min(d.z - 1, floorToInt(hi.z / vs));
  std::int64_t added = 0;
  for (int z = z0; z <= z1; ++z) {
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const Index3 v{x, y, z};
        if (grid.occupied(v)) continue;
        if (inside(grid.voxelCenter(v))) {
          grid.setOccupied(v);
          ++added;
        }
      }
    }
  }
  return added;
}

std::int64_t rasterizeSphere(OccupancyGrid& grid, const SphereObstacle& s) {
  const Vec3 r{s.radius, s.radius, s.radius};
  const double r2 = s.radius * s.radius;
  return markBox(grid, s.center - r, s.center + r,
                 [&](const Vec3& c) { return squaredDistance(c, s.center) <= r2; });
}

std::int64_t rasterizeCylinder(OccupancyGrid& grid, const CylinderObstacle& c) {
  const double r2 = c.radius * c.radius;
  return markBox(grid, {c.cx - c.radius, c.cy - c.radius, 0.0}, {c.cx + c.radius, c.cy + c.radius, c.height},
                 [&](const Vec3& p) {
                   const double dx = p.x - c.cx;
                   const double dy = p.y - c.cy;
                   return dx * dx + dy * dy <= r2 && p.z <= c.height;
                 });
}

}  // namespace

OccupancyGrid::OccupancyGrid(Index3 dims, double voxel_size) : dims_(dims), voxel_size_(voxel_size) {
  checkDims(dims);
  if (!(voxel_size > 0.0)) throw std::invalid_argument("voxel_size must be positive");
  cells_.assign(static_cast<std::size_t>(dims.volume()), 0);
}

OccupancyGrid::OccupancyGrid(Index3 dims, double voxel_size, std::vector<std::uint8_t> cells)
    : OccupancyGrid(dims, voxel_size) {
  if (static_cast<std::int64_t>(cells.size()) != dims.volume()) {
    throw std::invalid_argument("cell count does not match dims");
  }
  for (auto& c : cells) c = c != 0 ? 1 : 0;
  cells_ = std::move(cells);
}

std::optional<Index3> OccupancyGrid::voxelOf(const Vec3& p) const {
  const double inv = 1.0 / voxel_size_;
  const double fx = std::floor(p.x * inv);
  const double fy = std::floor(p.y * inv);
  const double fz = std::floor(p.z * inv);
  if (!(fx >= 0.0 && fy >= 0.0 && fz >= 0.0 && fx < dims_.x && fy < dims_.y && fz < dims_.z)) {
    return std::nullopt;
  }
  return Index3{static_cast<int>(fx), static_cast<int>(fy), static_cast<int>(fz)};
}

std::int64_t OccupancyGrid::occupiedCount() const {
  return std::count(cells_.begin(), cells_.end(), std::uint8_t{1});
}

OccupancyGrid OccupancyGrid::fromLabels(const LabelGrid& labels) {
  return OccupancyGrid(labels.dims, labels.voxel_size, labels.values);
}

void PlanningProblem::validate() const {
  cost_params.validate();
  if (!(goal_radius > 0.0)) throw InvalidProblem("goal_radius must be positive");
  if (!isStateFree(grid, x_init)) throw InvalidProblem("x_init is out of bounds or occupied");
  if (!isStateFree(grid, x_goal)) throw InvalidProblem("x_goal is out of bounds or occupied");
}

bool isStateFree(const OccupancyGrid& grid, const Vec3& p) {
  const auto v = grid.voxelOf(p);
  return v && !grid.occupied(*v);
}

bool segmentFree(const OccupancyGrid& grid, const Vec3& a_in, const Vec3& b_in) {
  // Canonical orientation so that both argument orders visit identical samples.
  Vec3 a = a_in;
  Vec3 b = b_in;
  if (std::tie(b.x, b.y, b.z) < std::tie(a.x, a.y, a.z)) std::swap(a, b);

  const Vec3 d = b - a;
  const double len = d.norm();
  const double spacing = 0.5 * grid.voxelSize();
  const auto steps = static_cast<std::int64_t>(std::ceil(len / spacing));
  if (!isStateFree(grid, a)) return false;
  if (steps == 0) return true;
  if (!isStateFree(grid, b)) return false;
  const double inv = 1.0 / static_cast<double>(steps);
  for (std::int64_t i = 1; i < steps; ++i) {
    if (!isStateFree(grid, a + d * (static_cast<double>(i) * inv))) return false;
  }
  return true;
}

double freeMeasure(const OccupancyGrid& grid) {
  const double vs = grid.voxelSize();
  return static_cast<double>(grid.voxelCount() - grid.occupiedCount()) * vs * vs * vs;
}

std::pair<LabelGrid, LabelGrid> encodeProblemGrids(const PlanningProblem& problem) {
  const auto& grid = problem.grid;
  const auto vi = grid.voxelOf(problem.x_init);
  const auto vg = grid.voxelOf(problem.x_goal);
  if (!vi || grid.occupied(*vi)) throw InvalidProblem("start voxel is occupied or out of bounds");
  if (!vg || grid.occupied(*vg)) throw InvalidProblem("goal voxel is occupied or out of bounds");

  LabelGrid endpoints{grid.dims(), grid.voxelSize(),
                      std::vector<std::uint8_t>(static_cast<std::size_t>(grid.voxelCount()), 0)};
  endpoints.values[static_cast<std::size_t>(grid.linearIndex(*vi))] = 1;
  endpoints.values[static_cast<std::size_t>(grid.linearIndex(*vg))] = 2;
  return {std::move(endpoints), grid.toLabels()};
}

SphereFieldParams scaled(SphereFieldParams p, double scale) {
  p.radius = {p.radius.lo * scale, p.radius.hi * scale};
  p.top_height = {p.top_height.lo * scale, p.top_height.hi * scale};
  return p;
}

CylinderFieldParams scaled(CylinderFieldParams p, double scale) {
  p.radius = {p.radius.lo * scale, p.radius.hi * scale};
  p.height = {p.height.lo * scale, p.height.hi * scale};
  return p;
}

void rasterize(OccupancyGrid& grid, const ObstacleSet& obstacles) {
  for (const auto& s : obstacles.spheres) rasterizeSphere(grid, s);
  for (const auto& c : obstacles.cylinders) rasterizeCylinder(grid, c);
}

ObstacleSet sampleObstacles(Index3 dims, double voxel_size, const SphereFieldParams& spheres,
                            const CylinderFieldParams& cylinders, std::uint64_t seed) {
  checkDims(dims);
  if (spheres.count < 0 || cylinders.count < 0) throw std::invalid_argument("obstacle count must be >= 0");
  checkRange(spheres.radius, "sphere radius");
  checkRange(spheres.top_height, "sphere height");
  checkRange(cylinders.radius, "cylinder radius");
  checkRange(cylinders.height, "cylinder height");

  const Vec3 ext{dims.x * voxel_size, dims.y * voxel_size, dims.z * voxel_size};
  Rng rng(seed);
  ObstacleSet out;
  out.spheres.reserve(static_cast<std::size_t>(spheres.count));
  for (int i = 0; i < spheres.count; ++i) {
    const double r = rng.uniform(spheres.radius.lo, spheres.radius.hi);
    const double x = rng.uniform(0.0, ext.x);
    const double y = rng.uniform(0.0, ext.y);
    const double top = rng.uniform(spheres.top_height.lo, spheres.top_height.hi);
    out.spheres.push_back({{x, y, top - r}, r});
  }
  out.cylinders.reserve(static_cast<std::size_t>(cylinders.count));
  for (int i = 0; i < cylinders.count; ++i) {
    const double r = rng.uniform(cylinders.radius.lo, cylinders.radius.hi);
    const double x = rng.uniform(0.0, ext.x);
    const double y = rng.uniform(0.0, ext.y);
    const double h = rng.uniform(cylinders.height.lo, cylinders.height.hi);
    out.cylinders.push_back({x, y, r, h});
  }
  return out;
}

OccupancyGrid generateMapSpheres(Index3 dims, const SphereFieldParams& spheres, std::uint64_t seed,
                                 double voxel_size) {
  return generateMapCylinders(dims, spheres, CylinderFieldParams{}, seed, voxel_size);
}

OccupancyGrid generateMapCylinders(Index3 dims, const SphereFieldParams& spheres,
                                   const CylinderFieldParams& cylinders, std::uint64_t seed,
                                   double voxel_size) {
  const ObstacleSet obstacles = sampleObstacles(dims, voxel_size, spheres, cylinders, seed);
  OccupancyGrid grid(dims, voxel_size);
  rasterize(grid, obstacles);
  return grid;
}

OccupancyGrid generateMapDensity(Index3 dims, double density, Range radius, std::uint64_t seed,
                                 std::span<const Vec3> keep_clear, double clearance, double voxel_size) {
  checkDims(dims);
  checkRange(radius, "sphere radius");
  if (!(density >= 0.0 && density < 1.0)) throw std::invalid_argument("density must lie in [0, 1)");
  OccupancyGrid grid(dims, voxel_size);
  const Vec3 ext = grid.extent();
  const auto target = static_cast<std::int64_t>(std::ceil(density * static_cast<double>(grid.voxelCount())));
  Rng rng(seed);
  std::int64_t occupied = 0;
  std::int64_t attempts = 0;
  const std::int64_t max_attempts = 1000 + 1000 * grid.voxelCount();
  while (occupied < target) {
    if (++attempts > max_attempts) throw std::invalid_argument("density not reachable with given clearance");
    const double r = rng.uniform(radius.lo, radius.hi);
    const Vec3 c{rng.uniform(0.0, ext.x), rng.uniform(0.0, ext.y), rng.uniform(0.0, ext.z)};
    const bool blocked = std::any_of(keep_clear.begin(), keep_clear.end(),
                                     [&](const Vec3& p) { return distance(p, c) < r + clearance; });
    if (blocked) continue;
    occupied += rasterizeSphere(grid, {c, r});
  }
  return grid;
}

}  // namespace pierguard
