#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "pierguard/grid_map.hpp"
#include "pierguard/planners.hpp"

namespace pierguard {

/// Planner settings plus the problem-level knobs a run needs.
///
/// JSON keys (all optional, defaults shown by a default-constructed value):
///   mu, step, goal_radius, beta1, beta2, max_iterations, phase_tolerance,
///   radius_cap_factor, region_sampling ("weighted" | "uniform_mask"),
///   stop_rule ("budget" | "first_solution" | "optimal_phase"), seed
struct RunConfig {
  PlannerConfig planner;
  double goal_radius = 1.5;
  CostParams cost;
};

nlohmann::json toJson(const RunConfig& config);
/// Unknown keys are rejected with std::invalid_argument.
RunConfig runConfigFromJson(const nlohmann::json& j);

/// FNV-1a over dims, voxel size, cells, endpoints, goal radius and cost weights.
std::uint64_t problemDigest(const PlanningProblem& problem);

/// {problem_digest, planner, config, solved, best_cost, path, log}.
nlohmann::json planResultToJson(const PlanResult& result, const PlanningProblem& problem, const RunConfig& config);

}  // namespace pierguard
