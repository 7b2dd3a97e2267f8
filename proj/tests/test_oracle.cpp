#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "pierguard/errors.hpp"
#include "pierguard/grid_io.hpp"
#include "pierguard/oracle.hpp"
#include "test_helpers.hpp"

using namespace pierguard;

namespace {

bool neighbours26(const Index3& a, const Index3& b) {
  const int dx = std::abs(a.x - b.x), dy = std::abs(a.y - b.y), dz = std::abs(a.z - b.z);
  return std::max({dx, dy, dz}) == 1;
}

void checkPathInvariants(const OccupancyGrid& grid, const GridPath& path, const Index3& s, const Index3& g) {
  REQUIRE_FALSE(path.voxels.empty());
  CHECK(path.voxels.front() == s);
  CHECK(path.voxels.back() == g);
  for (std::size_t i = 0; i < path.voxels.size(); ++i) {
    REQUIRE(grid.voxelFree(path.voxels[i]));
    if (i > 0) REQUIRE(neighbours26(path.voxels[i - 1], path.voxels[i]));
  }
  // Independent Euclidean sum along the path (summation order differs from the canonical cost).
  double sum = 0.0;
  for (std::size_t i = 1; i < path.voxels.size(); ++i) {
    const Index3 d = path.voxels[i] - path.voxels[i - 1];
    sum += std::sqrt(static_cast<double>(d.x * d.x + d.y * d.y + d.z * d.z)) * grid.voxelSize();
  }
  CHECK(path.cost == doctest::Approx(sum).epsilon(1e-12));
}

}  // namespace

TEST_CASE("astar on a free cube is the body diagonal") {
  OccupancyGrid grid({8, 8, 8});
  const auto path = astarPlan(grid, {0, 0, 0}, {7, 7, 7});
  CHECK(path.cost == doctest::Approx(12.12435565298214).epsilon(1e-14));
  CHECK(path.voxels.size() == 8);
  checkPathInvariants(grid, path, {0, 0, 0}, {7, 7, 7});
  CHECK(astarPlan(grid, {3, 3, 3}, {3, 3, 3}).cost == 0.0);
}

TEST_CASE("astar on a sealed goal") {
  OccupancyGrid grid({8, 8, 8});
  for (int x = 3; x <= 5; ++x)
    for (int y = 3; y <= 5; ++y)
      for (int z = 3; z <= 5; ++z)
        if (!(x == 4 && y == 4 && z == 4)) grid.setOccupied({x, y, z});
  CHECK_THROWS_AS(astarPlan(grid, {0, 0, 0}, {4, 4, 4}), NoPathError);
  CHECK_THROWS_AS(dijkstraOracle(grid, {0, 0, 0}, {4, 4, 4}), NoPathError);
  CHECK_THROWS_AS(astarPlan(grid, {3, 3, 3}, {0, 0, 0}), InvalidProblem);
}

TEST_CASE("dijkstra examples") {
  OccupancyGrid grid({4, 4, 4});
  CHECK(dijkstraOracle(grid, {0, 0, 0}, {3, 0, 0}) == 3.0);
  CHECK(dijkstraOracle(grid, {1, 2, 3}, {1, 2, 3}) == 0.0);
}

TEST_CASE("astar equals dijkstra on random 16^3 maps") {
  int solved = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto grid = test::randomGrid({16, 16, 16}, 0.3, 1000 + seed);
    Rng rng(seed);
    Index3 s{}, g{};
    do {
      s = grid.fromLinear(static_cast<std::int64_t>(rng.below(4096)));
    } while (grid.occupied(s));
    do {
      g = grid.fromLinear(static_cast<std::int64_t>(rng.below(4096)));
    } while (grid.occupied(g));
    try {
      const auto path = astarPlan(grid, s, g);
      REQUIRE(path.cost == dijkstraOracle(grid, s, g));
      checkPathInvariants(grid, path, s, g);
      ++solved;
    } catch (const NoPathError&) {
      CHECK_THROWS_AS(dijkstraOracle(grid, s, g), NoPathError);
    }
  }
  CHECK(solved >= 40);
}

TEST_CASE("astar equals dijkstra on every reachable pair of a 6^3 maze") {
  const auto maze = test::randomGrid({6, 6, 6}, 0.35, 4242);
  std::vector<Index3> free_voxels;
  for (std::int64_t i = 0; i < maze.voxelCount(); ++i)
    if (!maze.occupied(maze.fromLinear(i))) free_voxels.push_back(maze.fromLinear(i));
  std::size_t pairs = 0;
  for (const auto& s : free_voxels) {
    for (const auto& g : free_voxels) {
      try {
        const double d = dijkstraOracle(maze, s, g);
        REQUIRE(astarPlan(maze, s, g).cost == d);
        ++pairs;
      } catch (const NoPathError&) {
        REQUIRE_THROWS_AS(astarPlan(maze, s, g), NoPathError);
      }
    }
  }
  CHECK(pairs > 1000);
}

TEST_CASE("grid path cost rejects non-neighbours") {
  const std::vector<Index3> bad{{0, 0, 0}, {2, 0, 0}};
  CHECK_THROWS_AS(gridPathCost(bad, 1.0), std::invalid_argument);
  CHECK(stepCountCost(1, 1, 1, 1.0) == doctest::Approx(1.0 + std::sqrt(2.0) + std::sqrt(3.0)));
}

TEST_CASE("dilate_path") {
  OccupancyGrid grid({9, 9, 9});
  GridPath single{{{4, 4, 4}}, 0.0};
  const auto cube = dilatePath(single, grid, 1);
  int set = 0;
  for (std::int64_t i = 0; i < grid.voxelCount(); ++i) {
    const Index3 v = grid.fromLinear(i);
    const bool in_cube = std::abs(v.x - 4) <= 1 && std::abs(v.y - 4) <= 1 && std::abs(v.z - 4) <= 1;
    CHECK((cube.values[static_cast<std::size_t>(i)] != 0) == in_cube);
    set += cube.values[static_cast<std::size_t>(i)] != 0 ? 1 : 0;
  }
  CHECK(set == 27);
  CHECK_THROWS_AS(dilatePath(single, grid, 0), std::invalid_argument);
}

TEST_CASE("dilate_path matches a per-voxel Chebyshev scan") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto grid = test::randomGrid({16, 16, 16}, 0.2, seed);
    grid.setOccupied({1, 1, 1}, false);
    grid.setOccupied({14, 14, 14}, false);
    GridPath path;
    try {
      path = astarPlan(grid, {1, 1, 1}, {14, 14, 14});
    } catch (const NoPathError&) {
      continue;
    }
    for (int r = 1; r <= 3; ++r) {
      const auto mask = dilatePath(path, grid, r);
      for (std::int64_t i = 0; i < grid.voxelCount(); ++i) {
        const Index3 v = grid.fromLinear(i);
        bool near = false;
        for (const auto& p : path.voxels)
          near = near || std::max({std::abs(v.x - p.x), std::abs(v.y - p.y), std::abs(v.z - p.z)}) <= r;
        const bool expected = near && !grid.occupied(v);
        REQUIRE((mask.values[static_cast<std::size_t>(i)] != 0) == expected);
      }
    }
  }
}

TEST_CASE("training samples") {
  PlanningProblem free_problem{OccupancyGrid({16, 16, 16}), {0.5, 0.5, 0.5}, {15.5, 15.5, 15.5}, 1.5, {}};
  const auto sample = makeTrainingSample(free_problem, 2);
  for (int i = 0; i < 16; ++i) CHECK(sample.label.values[static_cast<std::size_t>(free_problem.grid.linearIndex({i, i, i}))] == 1);
  CHECK(sample.e1.dims == sample.label.dims);
  CHECK(sample.e2.dims == sample.label.dims);

  auto sealed = free_problem;
  for (int x = 6; x < 16; ++x)
    for (int y = 0; y < 16; ++y)
      for (int z = 0; z < 16; ++z)
        if (x == 6) sealed.grid.setOccupied({x, y, z});
  CHECK_THROWS_AS(makeTrainingSample(sealed, 2), NoPathError);

  // Independent rerun of the pipeline on a seeded map.
  auto grid = generateMapSpheres({24, 24, 24}, {60}, 17);
  grid.setOccupied({2, 2, 2}, false);
  grid.setOccupied({21, 21, 2}, false);
  PlanningProblem p{grid, {2.5, 2.5, 2.5}, {21.5, 21.5, 2.5}, 1.5, {}};
  const auto a = makeTrainingSample(p, 2);
  const auto path = astarPlan(grid, {2, 2, 2}, {21, 21, 2});
  const auto label = dilatePath(path, grid, 2);
  CHECK(a.label == label);
  CHECK(a == makeTrainingSample(p, 2));
  for (std::size_t i = 0; i < a.label.values.size(); ++i)
    if (a.label.values[i] != 0) REQUIRE(grid.cells()[i] == 0);

  const auto bytes = encodeSample(a);
  CHECK(std::equal(bytes.begin(), bytes.begin() + 6, "PSAMP\x01"));
  CHECK(bytes[6] == 3);
  CHECK(decodeSample(bytes) == a);
  auto truncated = bytes;
  truncated.resize(bytes.size() - 10);
  CHECK_THROWS_AS(decodeSample(truncated), FormatError);
  auto wrong_count = bytes;
  wrong_count[6] = 2;
  CHECK_THROWS_AS(decodeSample(wrong_count), FormatError);
}

TEST_CASE("dataset manifest round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "pierguard_manifest_test";
  std::filesystem::create_directories(dir);
  const DatasetManifest m{{"sample_0000.psamp", "sample_0001.psamp"}, 99, 3};
  writeManifest(dir, m);
  const auto back = readManifest(dir);
  CHECK(back.files == m.files);
  CHECK(back.seed == 99);
  CHECK(back.dilation_radius == 3);
  std::filesystem::remove_all(dir);
}
