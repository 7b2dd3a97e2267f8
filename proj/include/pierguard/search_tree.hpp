#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pierguard/cost_geometry.hpp"
#include "pierguard/kd_index.hpp"
#include "pierguard/vec3.hpp"

namespace pierguard {

struct TreeNode {
  Vec3 position;
  NodeId parent = kNoNode;
  double cost_from_root = 0.0;
  std::optional<Vec3> incoming_dir;
  std::vector<NodeId> children;
  bool alive = true;
};

/// Rooted tree of states with parent links, accumulated costs and an exact
/// nearest-neighbour index. Node ids are stable; removed nodes keep their id
/// slot but are no longer alive.
class SearchTree {
 public:
  /// `target` is the point this tree grows toward (cost-to-go reference).
  SearchTree(const Vec3& root, const Vec3& target, CostParams params);

  NodeId root() const { return 0; }
  const Vec3& target() const { return target_; }
  const CostParams& costParams() const { return params_; }

  const TreeNode& node(NodeId id) const { return nodes_[id]; }
  bool alive(NodeId id) const { return id < nodes_.size() && nodes_[id].alive; }
  DirectedState state(NodeId id) const { return {nodes_[id].position, nodes_[id].incoming_dir}; }
  double cost(NodeId id) const { return nodes_[id].cost_from_root; }

  /// Live node count, root included.
  std::size_t size() const { return index_.size(); }
  /// Number of ids ever handed out, root included.
  std::size_t idBound() const { return nodes_.size(); }
  /// Nodes inserted since construction (root excluded), removed ones included.
  std::size_t insertedCount() const { return nodes_.size() - 1; }

  /// Caller guarantees the edge parent -> position is feasible.
  NodeId addNode(NodeId parent, const Vec3& position);

  /// Moves `child` under `new_parent` and eagerly refreshes descendant costs.
  /// Throws std::invalid_argument if new_parent is child or one of its descendants.
  void reparent(NodeId child, NodeId new_parent);

  /// Cost of reaching `p` through node `id`.
  double costThrough(NodeId id, const Vec3& p) const { return cost(id) + edgeCost(params_, state(id), p); }

  std::optional<NodeId> nearest(const Vec3& p) const { return index_.nearest(p); }
  std::vector<NodeId> near(const Vec3& p, double radius) const { return index_.within(p, radius); }

  /// Root first, `id` last.
  std::vector<Vec3> pathFromRoot(NodeId id) const;

  /// Removes `id` and all its descendants. The root cannot be removed.
  /// Returns the number of nodes removed.
  std::size_t removeSubtree(NodeId id);

  std::vector<NodeId> aliveIds() const;
  const KdIndex& index() const { return index_; }

  /// Set when a cost refresh raised some node's cost (only possible with a
  /// turning weight). Cleared by the caller.
  bool costsRaised() const { return costs_raised_; }
  void clearCostsRaised() { costs_raised_ = false; }

 private:
  void refreshSubtree(NodeId id);

  std::vector<TreeNode> nodes_;
  KdIndex index_;
  Vec3 target_;
  CostParams params_;
  bool costs_raised_ = false;
};

/// Result of a structural consistency check.
struct TreeAudit {
  std::size_t nodes_checked = 0;
  std::size_t cycle_violations = 0;      // node not reachable from root by parent links
  std::size_t cost_violations = 0;       // cost != parent cost + edge cost (tolerance)
  std::size_t collision_violations = 0;  // edge fails segmentFree
  std::size_t link_violations = 0;       // parent/child lists disagree or index mismatch

  std::size_t total() const {
    return cycle_violations + cost_violations + collision_violations + link_violations;
  }
};

class OccupancyGrid;

TreeAudit auditTree(const SearchTree& tree, const OccupancyGrid& grid, double cost_tolerance = 1e-9);

}  // namespace pierguard
