#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pierguard/grid_map.hpp"
#include "pierguard/heuristics.hpp"
#include "pierguard/search_tree.hpp"

namespace pierguard {

// --- tree primitives ---------------------------------------------------------

/// `toward` if it is within `step` of `from`, else the point `step` along the segment.
Vec3 steer(const Vec3& from, const Vec3& toward, double step);

/// Standard RRT* extension: steer from the nearest node, choose the cheapest
/// collision-free parent among near(x_new, radius) and the nearest node, then
/// rewire. Returns the new id, or nullopt when the steered edge collides.
std::optional<NodeId> extendRrtStar(SearchTree& tree, const PlanningProblem& problem, const Vec3& x_rand,
                                    double radius, double step);

/// Re-parents every candidate whose cost drops when routed through `new_id`
/// (collision-checked). Returns the number of re-parented nodes.
std::size_t rewireThrough(SearchTree& tree, const PlanningProblem& problem, NodeId new_id,
                          std::span<const NodeId> candidates);

/// Candidate list sorted by cost-through-candidate, then id; x_new is
/// attached under the first collision-free candidate whose cost plus the
/// cost-to-go toward the tree's target beats c_best. Afterwards the
/// candidates are re-connected through x_new where that is cheaper.
/// Returns the new id, or nullopt if no candidate qualified.
std::optional<NodeId> pathOpt(SearchTree& tree, const PlanningProblem& problem, const Vec3& x_new,
                              std::span<const NodeId> candidates, double c_best);

struct Connection {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<Vec3> waypoints;  // x_init ... x_goal
};

/// Walks from x_connect (in tree_b) toward x_new (in tree_a) in increments of
/// `step`, collision-checking each piece. On success returns the joined path
/// oriented from x_init to x_goal; `a_is_forward` says whether tree_a is
/// rooted at x_init.
std::optional<Connection> connectGraphs(const SearchTree& tree_a, NodeId x_new, const SearchTree& tree_b,
                                        NodeId x_connect, const PlanningProblem& problem, double step,
                                        bool a_is_forward);

/// Removes every subtree whose root v has cost(v) + costToGo(v, tree target)
/// > c_best (plus a 1e-9 relative slack). Roots are kept. Returns the number of
/// removed nodes across both trees.
std::size_t branchAndBound(SearchTree& tree_a, SearchTree& tree_b, double c_best);

// --- planners ----------------------------------------------------------------

enum class PlannerKind { kRrtStar, kInformedRrtStar, kRrtConnect, kPierGuard };

const char* toString(PlannerKind kind);
/// Accepts "rrt_star", "informed_rrt_star", "rrt_connect", "pierguard".
PlannerKind plannerKindFromString(const std::string& name);

enum class StopRule {
  kIterationBudget,  // always run max_iterations
  kFirstSolution,    // stop once any path is found
  kOptimalPhase,     // stop once best_cost <= (1 + phase_tolerance) * reference_cost
};

struct PlannerConfig {
  double mu = 0.5;
  double step = 2.0;
  double radius_cap_factor = 3.0;  // connection radius capped at factor * step
  std::size_t max_iterations = 50000;
  std::uint64_t seed = 0;
  RegionSampling region_sampling = RegionSampling::kWeighted;
  bool fallback_to_uniform = true;
  std::optional<double> reference_cost;
  double phase_tolerance = 0.02;
  StopRule stop_rule = StopRule::kIterationBudget;
  /// Observer is called after every `observe_interval`-th iteration (0 = never).
  std::size_t observe_interval = 0;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

struct IterationLog {
  std::size_t iteration = 0;   // 1-based
  std::size_t node_count = 0;  // nodes generated so far, roots excluded
  double best_cost = std::numeric_limits<double>::infinity();
  double elapsed_seconds = 0.0;
  SampleSource source = SampleSource::kUniform;
};

struct PlanResult {
  PlannerKind planner = PlannerKind::kRrtStar;
  std::optional<std::vector<Vec3>> best_path;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<IterationLog> log;

  bool solved() const { return best_path.has_value(); }
};

/// Called with the 1-based iteration and the live trees (one or two).
using IterationObserver = std::function<void(std::size_t iteration, std::span<const SearchTree* const> trees)>;

PlanResult planRrtStar(const PlanningProblem& problem, const PlannerConfig& config,
                       const IterationObserver& observer = {});
PlanResult planInformed(const PlanningProblem& problem, const PlannerConfig& config,
                        const IterationObserver& observer = {});
PlanResult planRrtConnect(const PlanningProblem& problem, const PlannerConfig& config,
                          const IterationObserver& observer = {});
/// Throws std::invalid_argument when region dims differ from the grid's.
PlanResult planPierGuard(const PlanningProblem& problem, const HeuristicRegion& region, const PlannerConfig& config,
                         const IterationObserver& observer = {});

/// Dispatches on `kind`; `region` is required for kPierGuard and ignored otherwise.
PlanResult plan(PlannerKind kind, const PlanningProblem& problem, const HeuristicRegion* region,
                const PlannerConfig& config, const IterationObserver& observer = {});

}  // namespace pierguard
