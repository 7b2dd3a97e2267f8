#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "pierguard/errors.hpp"
#include "pierguard/planners.hpp"

namespace pierguard {

const char* toString(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::kRrtStar: return "rrt_star";
    case PlannerKind::kInformedRrtStar: return "informed_rrt_star";
    case PlannerKind::kRrtConnect: return "rrt_connect";
    case PlannerKind::kPierGuard: return "pierguard";
  }
  return "unknown";
}

PlannerKind plannerKindFromString(const std::string& name) {
  for (PlannerKind k : {PlannerKind::kRrtStar, PlannerKind::kInformedRrtStar, PlannerKind::kRrtConnect,
                        PlannerKind::kPierGuard}) {
    if (name == toString(k)) return k;
  }
  throw std::invalid_argument("unknown planner: " + name);
}

void PlannerConfig::validate() const {
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("mu must lie in [0, 1]");
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  if (!(radius_cap_factor > 0.0)) throw std::invalid_argument("radius_cap_factor must be positive");
  if (!(phase_tolerance >= 0.0)) throw std::invalid_argument("phase_tolerance must be nonnegative");
  if (reference_cost && !(*reference_cost > 0.0)) throw std::invalid_argument("reference_cost must be positive");
  if (stop_rule == StopRule::kOptimalPhase && !reference_cost) {
    throw std::invalid_argument("optimal-phase stop rule needs a reference_cost");
  }
}

namespace {

using Clock = std::chrono::steady_clock;

// Shared bookkeeping: best solution, per-iteration log and stop rule.
class PlanRun {
 public:
  PlanRun(PlannerKind kind, const PlanningProblem& problem, const PlannerConfig& config,
          const IterationObserver& observer)
      : problem_(problem), config_(config), observer_(observer), start_(Clock::now()) {
    result_.planner = kind;
    result_.log.reserve(std::min<std::size_t>(config.max_iterations, 1u << 20));
    free_measure_ = freeMeasure(problem.grid);
  }

  double bestCost() const { return result_.best_cost; }
  double radius(const SearchTree& tree) const {
    return rrtStarRadius(3, free_measure_, tree.size(), config_.radius_cap_factor * config_.step);
  }

  /// Accepts the path if its cost beats the incumbent. Returns true on improvement.
  bool offer(std::vector<Vec3> path) {
    const double cost = path.size() >= 2 ? pathCost(problem_.cost_params, path) : 0.0;
    if (!(cost < result_.best_cost)) return false;
    result_.best_cost = cost;
    result_.best_path = std::move(path);
    return true;
  }

  /// Appends the log entry and notifies the observer. Returns true when the
  /// stop rule fires.
  bool record(std::size_t iteration, std::size_t node_count, SampleSource source,
              std::span<const SearchTree* const> trees) {
    const double elapsed = std::chrono::duration<double>(Clock::now() - start_).count();
    result_.log.push_back({iteration, node_count, result_.best_cost, elapsed, source});
    if (observer_ && config_.observe_interval > 0 && iteration % config_.observe_interval == 0) {
      observer_(iteration, trees);
    }
    switch (config_.stop_rule) {
      case StopRule::kIterationBudget: return false;
      case StopRule::kFirstSolution: return result_.solved();
      case StopRule::kOptimalPhase:
        return config_.reference_cost &&
               result_.best_cost <= (1.0 + config_.phase_tolerance) * *config_.reference_cost;
    }
    return false;
  }

  PlanResult finish() { return std::move(result_); }

 private:
  const PlanningProblem& problem_;
  const PlannerConfig& config_;
  const IterationObserver& observer_;
  Clock::time_point start_;
  double free_measure_ = 0.0;
  PlanResult result_;
};

void checkInputs(const PlanningProblem& problem, const PlannerConfig& config) {
  problem.validate();
  config.validate();
}

// Single-tree RRT* with uniform or informed sampling. Goal candidates are
// nodes within goal_radius of x_goal with a free final segment to x_goal.
PlanResult planSingleTree(PlannerKind kind, const PlanningProblem& problem, const PlannerConfig& config,
                          const IterationObserver& observer) {
  checkInputs(problem, config);
  const bool informed = kind == PlannerKind::kInformedRrtStar;
  Rng rng(config.seed);
  PlanRun run(kind, problem, config, observer);
  SearchTree tree(problem.x_init, problem.x_goal, problem.cost_params);
  const std::array<const SearchTree*, 1> trees{&tree};

  std::vector<NodeId> goal_nodes;
  auto consider_goal = [&](NodeId id) {
    const Vec3& p = tree.node(id).position;
    if (distance(p, problem.x_goal) <= problem.goal_radius && segmentFree(problem.grid, p, problem.x_goal)) {
      goal_nodes.push_back(id);
    }
  };
  consider_goal(tree.root());

  auto refresh_best = [&] {
    NodeId best = kNoNode;
    double best_cost = run.bestCost();
    for (NodeId g : goal_nodes) {
      const double c = tree.costThrough(g, problem.x_goal);
      if (c < best_cost) {
        best_cost = c;
        best = g;
      }
    }
    if (best == kNoNode) return;
    std::vector<Vec3> path = tree.pathFromRoot(best);
    if (!(path.back() == problem.x_goal)) path.push_back(problem.x_goal);
    run.offer(std::move(path));
  };
  refresh_best();

  for (std::size_t it = 1; it <= config.max_iterations; ++it) {
    Vec3 x_rand;
    SampleSource source = SampleSource::kUniform;
    if (informed && std::isfinite(run.bestCost())) {
      const double length_bound = run.bestCost() / problem.cost_params.beta1;
      x_rand = sampleInformed(InformedSet::between(problem.x_init, problem.x_goal, length_bound), rng);
      source = SampleSource::kInformed;
    } else {
      x_rand = sampleUniform(problem.grid, rng);
    }
    if (auto id = extendRrtStar(tree, problem, x_rand, run.radius(tree), config.step)) {
      consider_goal(*id);
      refresh_best();
    }
    if (run.record(it, tree.insertedCount(), source, trees)) break;
  }
  return run.finish();
}

// Two trees that exchange roles every iteration. The region-biased variant
// uses pathOpt and branch-and-bound; the plain variant uses RRT* extension.
PlanResult planBidirectional(PlannerKind kind, const PlanningProblem& problem, const HeuristicRegion* region,
                             const PlannerConfig& config, const IterationObserver& observer) {
  checkInputs(problem, config);
  const bool biased = kind == PlannerKind::kPierGuard;
  Rng rng(config.seed);
  PlanRun run(kind, problem, config, observer);
  SearchTree forward(problem.x_init, problem.x_goal, problem.cost_params);
  SearchTree backward(problem.x_goal, problem.x_init, problem.cost_params);
  const std::array<const SearchTree*, 2> trees{&forward, &backward};
  SearchTree* a = &forward;
  SearchTree* b = &backward;
  bool a_forward = true;
  double pruned_at = std::numeric_limits<double>::infinity();

  for (std::size_t it = 1; it <= config.max_iterations; ++it) {
    SampleSource source = SampleSource::kUniform;
    std::optional<Vec3> x_rand;
    if (biased) {
      try {
        const BiasedSample s = neuralSample(*region, problem.grid, config.mu, rng, config.region_sampling,
                                            config.fallback_to_uniform);
        x_rand = s.point;
        source = s.source;
      } catch (const EmptyRegionError&) {
        source = SampleSource::kRegion;
      }
    } else {
      x_rand = sampleUniform(problem.grid, rng);
    }

    std::optional<NodeId> x_new;
    if (x_rand) {
      if (biased) {
        const NodeId nearest = *a->nearest(*x_rand);
        const Vec3 p_new = steer(a->node(nearest).position, *x_rand, config.step);
        if (!(p_new == a->node(nearest).position)) {
          std::vector<NodeId> candidates = a->near(p_new, run.radius(*a));
          if (!std::binary_search(candidates.begin(), candidates.end(), nearest)) {
            candidates.insert(std::lower_bound(candidates.begin(), candidates.end(), nearest), nearest);
          }
          x_new = pathOpt(*a, problem, p_new, candidates, run.bestCost());
        }
      } else {
        x_new = extendRrtStar(*a, problem, *x_rand, run.radius(*a), config.step);
      }
    }

    if (x_new) {
      const NodeId x_connect = *b->nearest(a->node(*x_new).position);
      if (auto conn = connectGraphs(*a, *x_new, *b, x_connect, problem, config.step, a_forward)) {
        run.offer(std::move(conn->waypoints));
      }
    }

    if (biased && std::isfinite(run.bestCost()) &&
        (run.bestCost() < pruned_at || a->costsRaised() || b->costsRaised())) {
      branchAndBound(*a, *b, run.bestCost());
      pruned_at = run.bestCost();
      a->clearCostsRaised();
      b->clearCostsRaised();
    }

    std::swap(a, b);
    a_forward = !a_forward;
    if (run.record(it, forward.insertedCount() + backward.insertedCount(), source, trees)) break;
  }
  return run.finish();
}

}  // namespace

PlanResult planRrtStar(const PlanningProblem& problem, const PlannerConfig& config,
                       const IterationObserver& observer) {
  return planSingleTree(PlannerKind::kRrtStar, problem, config, observer);
}

PlanResult planInformed(const PlanningProblem& problem, const PlannerConfig& config,
                        const IterationObserver& observer) {
  return planSingleTree(PlannerKind::kInformedRrtStar, problem, config, observer);
}

PlanResult planRrtConnect(const PlanningProblem& problem, const PlannerConfig& config,
                          const IterationObserver& observer) {
  return planBidirectional(PlannerKind::kRrtConnect, problem, nullptr, config, observer);
}

PlanResult planPierGuard(const PlanningProblem& problem, const HeuristicRegion& region, const PlannerConfig& config,
                         const IterationObserver& observer) {
  if (!(region.dims() == problem.grid.dims())) throw std::invalid_argument("region dims differ from grid dims");
  return planBidirectional(PlannerKind::kPierGuard, problem, &region, config, observer);
}

PlanResult plan(PlannerKind kind, const PlanningProblem& problem, const HeuristicRegion* region,
                const PlannerConfig& config, const IterationObserver& observer) {
  switch (kind) {
    case PlannerKind::kRrtStar: return planRrtStar(problem, config, observer);
    case PlannerKind::kInformedRrtStar: return planInformed(problem, config, observer);
    case PlannerKind::kRrtConnect: return planRrtConnect(problem, config, observer);
    case PlannerKind::kPierGuard:
      if (!region) throw std::invalid_argument("pierguard requires a heuristic region");
      return planPierGuard(problem, *region, config, observer);
  }
  throw std::invalid_argument("unknown planner kind");
}

}  // namespace pierguard
