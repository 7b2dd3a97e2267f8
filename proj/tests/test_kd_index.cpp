#include <doctest.h>

#include <algorithm>
#include <map>

#include "pierguard/kd_index.hpp"
#include "test_helpers.hpp"

using namespace pierguard;

namespace {

NodeId linearNearest(const std::map<NodeId, Vec3>& pts, const Vec3& q) {
  NodeId best = kNoNode;
  double bd = INFINITY;
  for (const auto& [id, p] : pts) {
    const double d = squaredDistance(p, q);
    if (d < bd) {  // ascending map order makes the first minimum the smallest id
      bd = d;
      best = id;
    }
  }
  return best;
}

std::vector<NodeId> linearWithin(const std::map<NodeId, Vec3>& pts, const Vec3& q, double r) {
  std::vector<NodeId> out;
  for (const auto& [id, p] : pts)
    if (distance(p, q) <= r) out.push_back(id);
  return out;
}

}  // namespace

TEST_CASE("single entry and empty index") {
  KdIndex idx;
  CHECK_FALSE(idx.nearest({0, 0, 0}).has_value());
  idx.insert(5, {1, 1, 1});
  CHECK(idx.nearest({9, 9, 9}) == 5u);
  CHECK(idx.within({1, 1, 1}, 0.0) == std::vector<NodeId>{5});
}

TEST_CASE("nearest tie goes to the smaller id") {
  KdIndex idx;
  idx.insert(7, {1, 0, 0});
  idx.insert(3, {-1, 0, 0});
  CHECK(idx.nearest({0, 0, 0}) == 3u);
  KdIndex rev;
  rev.insert(3, {-1, 0, 0});
  rev.insert(7, {1, 0, 0});
  CHECK(rev.nearest({0, 0, 0}) == 3u);
}

TEST_CASE("matches linear scan under inserts and removals") {
  Rng rng(8);
  KdIndex idx;
  std::map<NodeId, Vec3> pts;
  NodeId next = 0;
  for (int round = 0; round < 6; ++round) {
    for (int i = 0; i < 500; ++i) {
      // Quantized coordinates provoke exact ties.
      const Vec3 p{std::floor(rng.uniform(0, 20)), std::floor(rng.uniform(0, 20)), rng.uniform(0, 20)};
      idx.insert(next, p);
      pts[next++] = p;
    }
    for (int i = 0; i < 200; ++i) {
      const auto victim = static_cast<NodeId>(rng.below(next));
      idx.remove(victim);
      pts.erase(victim);
    }
    REQUIRE(idx.size() == pts.size());
    for (int q = 0; q < 100; ++q) {
      const Vec3 query = test::randomPoint(rng, {-2, -2, -2}, {22, 22, 22});
      REQUIRE(idx.nearest(query) == linearNearest(pts, query));
      const double r = rng.uniform(0, 5);
      REQUIRE(idx.within(query, r) == linearWithin(pts, query, r));
    }
    std::vector<NodeId> ids;
    for (const auto& [id, p] : pts) ids.push_back(id);
    REQUIRE(idx.ids() == ids);
  }
  idx.remove(999999);  // absent: no-op
  CHECK(idx.size() == pts.size());
  idx.clear();
  CHECK(idx.empty());
}
