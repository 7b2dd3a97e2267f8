#include "pierguard/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>

#include <json.hpp>

#include "byte_io.hpp"
#include "pierguard/errors.hpp"
#include "pierguard/grid_io.hpp"

namespace pierguard {

namespace {

struct Neighbor {
  Index3 offset;
  int kind;  // number of nonzero components: 1, 2 or 3
};

const std::array<Neighbor, 26>& neighbors() {
  static const std::array<Neighbor, 26> table = [] {
    std::array<Neighbor, 26> t{};
    std::size_t n = 0;
    for (int dz = -1; dz <= 1; ++dz)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const int kind = std::abs(dx) + std::abs(dy) + std::abs(dz);
          if (kind == 0) continue;
          t[n++] = {{dx, dy, dz}, kind};
        }
    return t;
  }();
  return table;
}

constexpr std::array<double, 4> kStepLength{0.0, 1.0, std::numbers::sqrt2, std::numbers::sqrt3};

void checkEndpoints(const OccupancyGrid& grid, const Index3& start, const Index3& goal) {
  if (!grid.voxelFree(start)) throw InvalidProblem("start voxel is occupied or out of bounds");
  if (!grid.voxelFree(goal)) throw InvalidProblem("goal voxel is occupied or out of bounds");
}

double heuristic(const Index3& a, const Index3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace

double stepCountCost(std::int64_t axial, std::int64_t planar, std::int64_t cubic, double voxel_size) {
  return (static_cast<double>(axial) + static_cast<double>(planar) * std::numbers::sqrt2 +
          static_cast<double>(cubic) * std::numbers::sqrt3) *
         voxel_size;
}

double gridPathCost(std::span<const Index3> voxels, double voxel_size) {
  std::array<std::int64_t, 4> counts{};
  for (std::size_t i = 1; i < voxels.size(); ++i) {
    const Index3 d = voxels[i] - voxels[i - 1];
    if (std::abs(d.x) > 1 || std::abs(d.y) > 1 || std::abs(d.z) > 1 || d == Index3{}) {
      throw std::invalid_argument("consecutive voxels are not 26-neighbours");
    }
    ++counts[static_cast<std::size_t>(std::abs(d.x) + std::abs(d.y) + std::abs(d.z))];
  }
  return stepCountCost(counts[1], counts[2], counts[3], voxel_size);
}

GridPath astarPlan(const OccupancyGrid& grid, const Index3& start, const Index3& goal) {
  checkEndpoints(grid, start, goal);

  struct Entry {
    double f;
    double h;
    std::uint64_t seq;
    std::int64_t cell;
    // Min-heap on (f, h, seq).
    bool operator<(const Entry& o) const {
      if (f != o.f) return f > o.f;
      if (h != o.h) return h > o.h;
      return seq > o.seq;
    }
  };

  const auto n = static_cast<std::size_t>(grid.voxelCount());
  std::vector<double> g(n, std::numeric_limits<double>::infinity());
  std::vector<std::int64_t> parent(n, -1);
  std::vector<std::uint8_t> closed(n, 0);
  std::priority_queue<Entry> open;
  std::uint64_t seq = 0;

  const std::int64_t s = grid.linearIndex(start);
  const std::int64_t t = grid.linearIndex(goal);
  g[static_cast<std::size_t>(s)] = 0.0;
  const double h0 = heuristic(start, goal);
  open.push({h0, h0, seq++, s});

  while (!open.empty()) {
    const Entry cur = open.top();
    open.pop();
    const auto ci = static_cast<std::size_t>(cur.cell);
    if (closed[ci]) continue;
    closed[ci] = 1;
    if (cur.cell == t) break;
    const Index3 v = grid.fromLinear(cur.cell);
    for (const auto& nb : neighbors()) {
      const Index3 w = v + nb.offset;
      if (!grid.voxelFree(w)) continue;
      const auto wi = static_cast<std::size_t>(grid.linearIndex(w));
      if (closed[wi]) continue;
      const double cand = g[ci] + kStepLength[static_cast<std::size_t>(nb.kind)];
      if (cand < g[wi]) {
        g[wi] = cand;
        parent[wi] = cur.cell;
        const double h = heuristic(w, goal);
        open.push({cand + h, h, seq++, static_cast<std::int64_t>(wi)});
      }
    }
  }

  if (!closed[static_cast<std::size_t>(t)]) throw NoPathError("goal voxel is unreachable");

  GridPath path;
  for (std::int64_t c = t; c != -1; c = parent[static_cast<std::size_t>(c)]) {
    path.voxels.push_back(grid.fromLinear(c));
  }
  std::reverse(path.voxels.begin(), path.voxels.end());
  path.cost = gridPathCost(path.voxels, grid.voxelSize());
  return path;
}

double dijkstraOracle(const OccupancyGrid& grid, const Index3& start, const Index3& goal) {
  checkEndpoints(grid, start, goal);
  using Item = std::pair<double, std::int64_t>;
  const auto n = static_cast<std::size_t>(grid.voxelCount());
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<std::int64_t> parent(n, -1);
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  const std::int64_t s = grid.linearIndex(start);
  const std::int64_t t = grid.linearIndex(goal);
  dist[static_cast<std::size_t>(s)] = 0.0;
  open.push({0.0, s});
  while (!open.empty()) {
    const auto [d, c] = open.top();
    open.pop();
    if (d > dist[static_cast<std::size_t>(c)]) continue;
    const Index3 v = grid.fromLinear(c);
    for (const auto& nb : neighbors()) {
      const Index3 w = v + nb.offset;
      if (!grid.voxelFree(w)) continue;
      const auto wi = static_cast<std::size_t>(grid.linearIndex(w));
      const double cand = d + kStepLength[static_cast<std::size_t>(nb.kind)];
      if (cand < dist[wi]) {
        dist[wi] = cand;
        parent[wi] = c;
        open.push({cand, static_cast<std::int64_t>(wi)});
      }
    }
  }
  if (!std::isfinite(dist[static_cast<std::size_t>(t)])) throw NoPathError("goal voxel is unreachable");
  std::vector<Index3> voxels;
  for (std::int64_t c = t; c != -1; c = parent[static_cast<std::size_t>(c)]) voxels.push_back(grid.fromLinear(c));
  return gridPathCost(voxels, grid.voxelSize());
}

LabelGrid dilatePath(const GridPath& path, const OccupancyGrid& grid, int radius_voxels) {
  if (radius_voxels < 1) throw std::invalid_argument("dilation radius must be >= 1");
  LabelGrid mask{grid.dims(), grid.voxelSize(),
                 std::vector<std::uint8_t>(static_cast<std::size_t>(grid.voxelCount()), 0)};
  const Index3& d = grid.dims();
  for (const Index3& p : path.voxels) {
    for (int z = std::max(0, p.z - radius_voxels); z <= std::min(d.z - 1, p.z + radius_voxels); ++z)
      for (int y = std::max(0, p.y - radius_voxels); y <= std::min(d.y - 1, p.y + radius_voxels); ++y)
        for (int x = std::max(0, p.x - radius_voxels); x <= std::min(d.x - 1, p.x + radius_voxels); ++x) {
          const Index3 v{x, y, z};
          if (!grid.occupied(v)) mask.values[static_cast<std::size_t>(grid.linearIndex(v))] = 1;
        }
  }
  return mask;
}

TrainingSample makeTrainingSample(const PlanningProblem& problem, int dilation_radius) {
  if (dilation_radius < 1) throw std::invalid_argument("dilation radius must be >= 1");
  auto [e1, e2] = encodeProblemGrids(problem);
  const GridPath path =
      astarPlan(problem.grid, *problem.grid.voxelOf(problem.x_init), *problem.grid.voxelOf(problem.x_goal));
  return {std::move(e1), std::move(e2), dilatePath(path, problem.grid, dilation_radius)};
}

namespace {
constexpr std::string_view kPsampMagic{"PSAMP\x01", 6};
}

std::vector<std::uint8_t> encodeSample(const TrainingSample& sample) {
  detail::ByteWriter w;
  w.raw(kPsampMagic);
  w.u32(3);
  w.bytes(encodePgrid(sample.e1));
  w.bytes(encodePgrid(sample.e2));
  w.bytes(encodePgrid(sample.label));
  return w.take();
}

TrainingSample decodeSample(std::span<const std::uint8_t> bytes) {
  detail::ByteReader r(bytes, "PSAMP");
  r.expectMagic(kPsampMagic);
  if (r.u32() != 3) r.fail("expected 3 grids");
  std::array<LabelGrid, 3> grids;
  std::size_t offset = r.position();
  for (auto& g : grids) {
    std::size_t used = 0;
    g = decodePgrid(bytes.subspan(offset), &used);
    offset += used;
  }
  if (offset != bytes.size()) r.fail("trailing bytes");
  if (!(grids[0].dims == grids[1].dims && grids[1].dims == grids[2].dims)) r.fail("grid dims differ");
  return {std::move(grids[0]), std::move(grids[1]), std::move(grids[2])};
}

void writeManifest(const std::filesystem::path& dir, const DatasetManifest& manifest) {
  nlohmann::json j{{"files", manifest.files}, {"seed", manifest.seed}, {"dilation_radius", manifest.dilation_radius}};
  std::ofstream out(dir / "manifest.json");
  if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
  out << j.dump(2) << '\n';
}

DatasetManifest readManifest(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw FormatError("missing manifest.json in " + dir.string());
  try {
    const auto j = nlohmann::json::parse(in);
    return {j.at("files").get<std::vector<std::string>>(), j.at("seed").get<std::uint64_t>(),
            j.at("dilation_radius").get<int>()};
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("manifest: ") + e.what());
  }
}

}  // namespace pierguard
