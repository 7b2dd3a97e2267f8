#include "pierguard/search_tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pierguard/grid_map.hpp"

namespace pierguard {

SearchTree::SearchTree(const Vec3& root, const Vec3& target, CostParams params)
    : target_(target), params_(params) {
  nodes_.push_back({root, kNoNode, 0.0, std::nullopt, {}, true});
  index_.insert(0, root);
}

NodeId SearchTree::addNode(NodeId parent, const Vec3& position) {
  if (!alive(parent)) throw std::invalid_argument("parent node is not alive");
  const auto id = static_cast<NodeId>(nodes_.size());
  TreeNode n;
  n.position = position;
  n.parent = parent;
  n.cost_from_root = costThrough(parent, position);
  n.incoming_dir = unitDirection(nodes_[parent].position, position);
  nodes_.push_back(std::move(n));
  nodes_[parent].children.push_back(id);
  index_.insert(id, position);
  return id;
}

void SearchTree::reparent(NodeId child, NodeId new_parent) {
  if (child == root()) throw std::invalid_argument("cannot reparent the root");
  for (NodeId a = new_parent; a != kNoNode; a = nodes_[a].parent) {
    if (a == child) throw std::invalid_argument("reparent would create a cycle");
  }
  TreeNode& c = nodes_[child];
  auto& siblings = nodes_[c.parent].children;
  siblings.erase(std::find(siblings.begin(), siblings.end(), child));
  c.parent = new_parent;
  nodes_[new_parent].children.push_back(child);
  refreshSubtree(child);
}

void SearchTree::refreshSubtree(NodeId id) {
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    TreeNode& t = nodes_[n];
    const TreeNode& p = nodes_[t.parent];
    const double old = t.cost_from_root;
    t.incoming_dir = unitDirection(p.position, t.position);
    t.cost_from_root = p.cost_from_root + edgeCost(params_, {p.position, p.incoming_dir}, t.position);
    if (t.cost_from_root > old) costs_raised_ = true;
    stack.insert(stack.end(), t.children.begin(), t.children.end());
  }
}

std::vector<Vec3> SearchTree::pathFromRoot(NodeId id) const {
  std::vector<Vec3> out;
  for (NodeId n = id; n != kNoNode; n = nodes_[n].parent) out.push_back(nodes_[n].position);
  std::reverse(out.begin(), out.end());
  return out;
}

std::size_t SearchTree::removeSubtree(NodeId id) {
  if (id == root()) throw std::invalid_argument("cannot remove the root");
  if (!alive(id)) return 0;
  auto& siblings = nodes_[nodes_[id].parent].children;
  siblings.erase(std::find(siblings.begin(), siblings.end(), id));
  std::size_t removed = 0;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    TreeNode& t = nodes_[n];
    t.alive = false;
    index_.remove(n);
    stack.insert(stack.end(), t.children.begin(), t.children.end());
    t.children.clear();
    ++removed;
  }
  return removed;
}

std::vector<NodeId> SearchTree::aliveIds() const {
  std::vector<NodeId> out;
  out.reserve(size());
  for (NodeId i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].alive) out.push_back(i);
  }
  return out;
}

TreeAudit auditTree(const SearchTree& tree, const OccupancyGrid& grid, double cost_tolerance) {
  TreeAudit audit;
  const auto ids = tree.aliveIds();
  audit.nodes_checked = ids.size();
  if (tree.index().ids() != ids) ++audit.link_violations;

  const TreeNode& root = tree.node(tree.root());
  if (root.parent != kNoNode || root.cost_from_root != 0.0) ++audit.cost_violations;

  for (NodeId id : ids) {
    const TreeNode& n = tree.node(id);
    for (NodeId c : n.children) {
      if (!tree.alive(c) || tree.node(c).parent != id) ++audit.link_violations;
    }
    if (id == tree.root()) continue;

    // Walk to the root; more than idBound() steps means a cycle.
    std::size_t steps = 0;
    NodeId a = id;
    while (a != tree.root() && a != kNoNode && steps <= tree.idBound()) {
      a = tree.node(a).parent;
      ++steps;
    }
    if (a != tree.root()) {
      ++audit.cycle_violations;
      continue;
    }

    const NodeId p = n.parent;
    if (!tree.alive(p)) {
      ++audit.link_violations;
      continue;
    }
    const auto& siblings = tree.node(p).children;
    if (std::find(siblings.begin(), siblings.end(), id) == siblings.end()) ++audit.link_violations;
    const double expected = tree.costThrough(p, n.position);
    if (std::abs(expected - n.cost_from_root) > cost_tolerance) ++audit.cost_violations;
    if (!segmentFree(grid, tree.node(p).position, n.position)) ++audit.collision_violations;
  }
  return audit;
}

}  // namespace pierguard
