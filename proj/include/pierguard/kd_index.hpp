#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "pierguard/vec3.hpp"

namespace pierguard {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Exact incremental 3-d tree over (id, point) pairs.
///
/// Removal is lazy; the tree is rebuilt balanced once tombstones outnumber
/// live entries or the insertion depth degrades. Queries are exact: nearest()
/// breaks distance ties by the smaller id, within() returns ids ascending.
class KdIndex {
 public:
  void insert(NodeId id, const Vec3& p);
  /// No-op for an id that is not present.
  void remove(NodeId id);
  void clear();

  std::size_t size() const { return live_; }
  bool empty() const { return live_ == 0; }
  bool contains(NodeId id) const;

  std::optional<NodeId> nearest(const Vec3& q) const;
  /// Ids with |p - q| <= radius, ascending.
  std::vector<NodeId> within(const Vec3& q, double radius) const;

  /// Every live id, ascending. For consistency audits.
  std::vector<NodeId> ids() const;

 private:
  static constexpr std::int32_t kNull = -1;

  struct Entry {
    Vec3 p;
    NodeId id;
    std::int32_t left = kNull;
    std::int32_t right = kNull;
    std::uint8_t axis = 0;
    bool removed = false;
  };

  void rebuild();
  std::int32_t build(std::vector<std::int32_t>& order, std::size_t lo, std::size_t hi, int depth);
  void nearestRec(std::int32_t n, const Vec3& q, double& best_d2, NodeId& best_id) const;
  void withinRec(std::int32_t n, const Vec3& q, double r2, std::vector<NodeId>& out) const;

  std::vector<Entry> entries_;
  std::vector<std::int32_t> slot_;  // id -> entry index, kNull when absent
  std::int32_t root_ = kNull;
  std::size_t live_ = 0;
  std::size_t removed_ = 0;
  std::size_t size_at_rebuild_ = 0;
  int max_depth_ = 0;
};

}  // namespace pierguard
