#include <algorithm>
#include <cmath>
#include <tuple>

#include "pierguard/planners.hpp"

namespace pierguard {

namespace {

bool isAncestor(const SearchTree& tree, NodeId maybe_ancestor, NodeId id) {
  for (NodeId a = id; a != kNoNode; a = tree.node(a).parent) {
    if (a == maybe_ancestor) return true;
  }
  return false;
}

}  // namespace

Vec3 steer(const Vec3& from, const Vec3& toward, double step) {
  const Vec3 d = toward - from;
  const double len = d.norm();
  if (len <= step) return toward;
  return from + d * (step / len);
}

std::size_t rewireThrough(SearchTree& tree, const PlanningProblem& problem, NodeId new_id,
                          std::span<const NodeId> candidates) {
  std::size_t rewired = 0;
  const Vec3 x_new = tree.node(new_id).position;
  for (NodeId c : candidates) {
    if (c == new_id || c == tree.root() || !tree.alive(c)) continue;
    const Vec3& p = tree.node(c).position;
    if (!(tree.costThrough(new_id, p) < tree.cost(c))) continue;
    if (isAncestor(tree, c, new_id)) continue;
    if (!segmentFree(problem.grid, x_new, p)) continue;
    tree.reparent(c, new_id);
    ++rewired;
  }
  return rewired;
}

std::optional<NodeId> extendRrtStar(SearchTree& tree, const PlanningProblem& problem, const Vec3& x_rand,
                                    double radius, double step) {
  const NodeId nearest = *tree.nearest(x_rand);
  const Vec3 from = tree.node(nearest).position;
  const Vec3 x_new = steer(from, x_rand, step);
  if (x_new == from) return std::nullopt;
  if (!segmentFree(problem.grid, from, x_new)) return std::nullopt;

  std::vector<NodeId> near = tree.near(x_new, radius);
  if (!std::binary_search(near.begin(), near.end(), nearest)) {
    near.insert(std::lower_bound(near.begin(), near.end(), nearest), nearest);
  }

  NodeId parent = nearest;
  double parent_cost = tree.costThrough(nearest, x_new);
  for (NodeId n : near) {
    if (n == nearest) continue;
    const double c = tree.costThrough(n, x_new);
    if (c < parent_cost && segmentFree(problem.grid, tree.node(n).position, x_new)) {
      parent = n;
      parent_cost = c;
    }
  }
  const NodeId id = tree.addNode(parent, x_new);
  rewireThrough(tree, problem, id, near);
  return id;
}

std::optional<NodeId> pathOpt(SearchTree& tree, const PlanningProblem& problem, const Vec3& x_new,
                              std::span<const NodeId> candidates, double c_best) {
  struct Candidate {
    double cost;
    NodeId id;
  };
  std::vector<Candidate> list;
  list.reserve(candidates.size());
  for (NodeId n : candidates) {
    if (!tree.alive(n) || tree.node(n).position == x_new) continue;
    list.push_back({tree.costThrough(n, x_new), n});
  }
  std::sort(list.begin(), list.end(),
            [](const Candidate& a, const Candidate& b) { return std::tie(a.cost, a.id) < std::tie(b.cost, b.id); });

  const double to_go = costToGo(tree.costParams(), x_new, tree.target());
  std::optional<NodeId> parent;
  for (const Candidate& c : list) {
    // Sorted ascending: once the bound fails it fails for the rest.
    if (!(c.cost + to_go < c_best)) break;
    if (segmentFree(problem.grid, tree.node(c.id).position, x_new)) {
      parent = c.id;
      break;
    }
  }
  if (!parent) return std::nullopt;

  const NodeId id = tree.addNode(*parent, x_new);
  std::vector<NodeId> order;
  order.reserve(list.size());
  for (const Candidate& c : list) order.push_back(c.id);
  rewireThrough(tree, problem, id, order);
  return id;
}

std::optional<Connection> connectGraphs(const SearchTree& tree_a, NodeId x_new, const SearchTree& tree_b,
                                        NodeId x_connect, const PlanningProblem& problem, double step,
                                        bool a_is_forward) {
  const Vec3 target = tree_a.node(x_new).position;
  std::vector<Vec3> bridge{tree_b.node(x_connect).position};
  while (!(bridge.back() == target)) {
    const Vec3 next = steer(bridge.back(), target, step);
    if (!segmentFree(problem.grid, bridge.back(), next)) return std::nullopt;
    bridge.push_back(next);
  }

  std::vector<Vec3> joined = tree_a.pathFromRoot(x_new);
  for (auto it = bridge.rbegin() + 1; it != bridge.rend(); ++it) joined.push_back(*it);
  const std::vector<Vec3> tail = tree_b.pathFromRoot(x_connect);
  for (auto it = tail.rbegin() + 1; it != tail.rend(); ++it) joined.push_back(*it);
  joined.erase(std::unique(joined.begin(), joined.end()), joined.end());
  if (!a_is_forward) std::reverse(joined.begin(), joined.end());

  Connection out;
  out.cost = joined.size() >= 2 ? pathCost(problem.cost_params, joined) : 0.0;
  out.waypoints = std::move(joined);
  return out;
}

std::size_t branchAndBound(SearchTree& tree_a, SearchTree& tree_b, double c_best) {
  if (!std::isfinite(c_best)) return 0;
  const double bound = c_best + 1e-9 * std::max(1.0, std::abs(c_best));
  std::size_t removed = 0;
  for (SearchTree* tree : {&tree_a, &tree_b}) {
    for (NodeId id : tree->aliveIds()) {
      if (id == tree->root() || !tree->alive(id)) continue;
      const TreeNode& n = tree->node(id);
      if (n.cost_from_root + costToGo(tree->costParams(), n.position, tree->target()) > bound) {
        removed += tree->removeSubtree(id);
      }
    }
  }
  return removed;
}

}  // namespace pierguard
