#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "pierguard/cost_geometry.hpp"
#include "pierguard/rng.hpp"
#include "test_helpers.hpp"

using namespace pierguard;

TEST_CASE("edge_cost") {
  const CostParams dist{1.0, 0.0};
  CHECK(edgeCost(dist, {{0, 0, 0}, std::nullopt}, {3, 4, 0}) == 5.0);
  CHECK(edgeCost(dist, {{1, 2, 3}, std::nullopt}, {1, 2, 3}) == 0.0);
  const CostParams turn{1.0, 1.0};
  CHECK(edgeCost(turn, {{1, 2, 3}, Vec3{1, 0, 0}}, {1, 2, 3}) == 0.0);
  CHECK(edgeCost(turn, {{0, 0, 0}, Vec3{1, 0, 0}}, {0, 2, 0}) ==
        doctest::Approx(2.0 + std::numbers::pi / 2).epsilon(1e-12));
  CHECK(edgeCost(turn, {{0, 0, 0}, std::nullopt}, {0, 2, 0}) == 2.0);
  // Straight continuation has no turn cost; reversal costs pi.
  CHECK(edgeCost(turn, {{0, 0, 0}, Vec3{1, 0, 0}}, {3, 0, 0}) == 3.0);
  CHECK(edgeCost(turn, {{0, 0, 0}, Vec3{1, 0, 0}}, {-1, 0, 0}) == doctest::Approx(1.0 + std::numbers::pi));
}

TEST_CASE("edge_cost is translation invariant") {
  const CostParams p{1.3, 0.7};
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Vec3 a = test::randomPoint(rng, {-5, -5, -5}, {5, 5, 5});
    const Vec3 b = test::randomPoint(rng, {-5, -5, -5}, {5, 5, 5});
    const Vec3 shift = test::randomPoint(rng, {-50, -50, -50}, {50, 50, 50});
    const auto dir = unitDirection({0, 0, 0}, test::randomPoint(rng, {-1, -1, -1}, {1, 1, 1}));
    CHECK(edgeCost(p, {a + shift, dir}, b + shift) == doctest::Approx(edgeCost(p, {a, dir}, b)).epsilon(1e-9));
  }
}

TEST_CASE("path_cost") {
  const std::vector<Vec3> line{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
  CHECK(pathCost({1.0, 0.0}, line) == 2.0);
  CHECK(pathCost({1.0, 1.0}, line) == 2.0);
  const std::vector<Vec3> corner{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}};
  CHECK(pathCost({1.0, 1.0}, corner) == doctest::Approx(2.0 + std::numbers::pi / 2));
  CHECK_THROWS_AS(pathCost({}, std::vector<Vec3>{{0, 0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(pathCost({}, std::vector<Vec3>{}), std::invalid_argument);

  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    std::vector<Vec3> pts;
    double length = 0.0;
    for (int k = 0; k < 6; ++k) {
      pts.push_back(test::randomPoint(rng, {0, 0, 0}, {10, 10, 10}));
      if (k > 0) length += distance(pts[k - 1], pts[k]);
    }
    CHECK(pathCost({1.0, 0.0}, pts) == doctest::Approx(length).epsilon(1e-12));
    // Uniform scaling scales the pure-distance cost.
    std::vector<Vec3> scaled_pts;
    for (const auto& p : pts) scaled_pts.push_back(p * 3.0);
    CHECK(pathCost({1.0, 0.0}, scaled_pts) == doctest::Approx(3.0 * length).epsilon(1e-12));
  }
}

TEST_CASE("cost_to_go is an admissible lower bound") {
  CHECK(costToGo({}, {1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(costToGo({1.0, 0.0}, {0, 0, 0}, {0, 0, 7}) == 7.0);
  Rng rng(21);
  for (int i = 0; i < 1000; ++i) {
    const CostParams p{rng.uniform(0.1, 3.0), rng.uniform(0.0, 2.0)};
    std::vector<Vec3> pts;
    const int n = 2 + static_cast<int>(rng.below(6));
    for (int k = 0; k < n; ++k) pts.push_back(test::randomPoint(rng, {0, 0, 0}, {20, 20, 20}));
    REQUIRE(pathCost(p, pts) >= costToGo(p, pts.front(), pts.back()) - 1e-12);
  }
}

TEST_CASE("rrt_star_radius") {
  const double measure = 64.0 * 64.0 * 64.0;
  CHECK(rrtStarRadius(3, measure, 1, 6.0) == 6.0);
  // Direct evaluation of the radius condition, computed offline.
  CHECK(rrtStarGamma(3, 262144.0) == doctest::Approx(60.5618825734982).epsilon(1e-12));
  CHECK(unitBallVolume(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-14));
  CHECK(unitBallVolume(2) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
  CHECK(rrtStarRadius(3, measure, 10000, 6.0) == doctest::Approx(5.892386965472242).epsilon(1e-12));
  CHECK(rrtStarRadius(3, measure, 10000, 100.0) == doctest::Approx(5.892386965472242).epsilon(1e-12));
  double prev = rrtStarRadius(3, measure, 3, 1e9);
  for (std::size_t n = 4; n < 5000; n += 7) {
    const double r = rrtStarRadius(3, measure, n, 1e9);
    REQUIRE(r <= prev);
    prev = r;
  }
  CHECK_THROWS_AS(rrtStarRadius(3, measure, 0, 6.0), std::invalid_argument);
  CHECK_THROWS_AS(rrtStarRadius(1, measure, 10, 6.0), std::invalid_argument);
  CHECK_THROWS_AS(rrtStarRadius(3, 0.0, 10, 6.0), std::invalid_argument);
}

namespace {

double bruteHausdorff(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  double ab = 0.0;
  for (const auto& x : a) {
    double m = INFINITY;
    for (const auto& y : b) m = std::min(m, distance(x, y));
    ab = std::max(ab, m);
  }
  double ba = 0.0;
  for (const auto& y : b) {
    double m = INFINITY;
    for (const auto& x : a) m = std::min(m, distance(x, y));
    ba = std::max(ba, m);
  }
  return std::max(ab, ba);
}

std::vector<Vec3> randomSet(Rng& rng, std::size_t n) {
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(test::randomPoint(rng, {0, 0, 0}, {10, 10, 10}));
  return out;
}

}  // namespace

TEST_CASE("hausdorff_distance") {
  const std::vector<Vec3> a{{0, 0, 0}, {1, 1, 1}};
  CHECK(hausdorffDistance(a, a) == 0.0);
  CHECK(hausdorffDistance(std::vector<Vec3>{{0, 0, 0}}, std::vector<Vec3>{{3, 4, 0}}) == 5.0);
  CHECK_THROWS_AS(hausdorffDistance(a, std::vector<Vec3>{}), std::invalid_argument);

  Rng rng(77);
  for (int i = 0; i < 30; ++i) {
    const auto x = randomSet(rng, 50);
    const auto y = randomSet(rng, 50);
    REQUIRE(hausdorffDistance(x, y) == bruteHausdorff(x, y));
    REQUIRE(hausdorffDistance(x, y) == hausdorffDistance(y, x));
    const auto z = randomSet(rng, 1 + rng.below(40));
    REQUIRE(hausdorffDistance(x, z) <= hausdorffDistance(x, y) + hausdorffDistance(y, z) + 1e-12);
  }
}

TEST_CASE("cost params validation") {
  const CostParams ok{1.0, 0.0}, zero{0.0, 0.0}, negative{1.0, -0.1};
  CHECK_NOTHROW(ok.validate());
  CHECK_THROWS_AS(zero.validate(), std::invalid_argument);
  CHECK_THROWS_AS(negative.validate(), std::invalid_argument);
}
