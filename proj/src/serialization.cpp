#include "pierguard/serialization.hpp"

#include <cmath>
#include <cstring>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pierguard {

namespace {

const char* toString(RegionSampling s) { return s == RegionSampling::kWeighted ? "weighted" : "uniform_mask"; }

RegionSampling regionSamplingFromString(const std::string& s) {
  if (s == "weighted") return RegionSampling::kWeighted;
  if (s == "uniform_mask") return RegionSampling::kUniformMask;
  throw std::invalid_argument("unknown region_sampling: " + s);
}

const char* toString(StopRule r) {
  switch (r) {
    case StopRule::kIterationBudget: return "budget";
    case StopRule::kFirstSolution: return "first_solution";
    case StopRule::kOptimalPhase: return "optimal_phase";
  }
  return "budget";
}

StopRule stopRuleFromString(const std::string& s) {
  if (s == "budget") return StopRule::kIterationBudget;
  if (s == "first_solution") return StopRule::kFirstSolution;
  if (s == "optimal_phase") return StopRule::kOptimalPhase;
  throw std::invalid_argument("unknown stop_rule: " + s);
}

nlohmann::json costOrNull(double c) { return std::isfinite(c) ? nlohmann::json(c) : nlohmann::json(nullptr); }

}  // namespace

nlohmann::json toJson(const RunConfig& c) {
  return {{"mu", c.planner.mu},
          {"step", c.planner.step},
          {"goal_radius", c.goal_radius},
          {"beta1", c.cost.beta1},
          {"beta2", c.cost.beta2},
          {"max_iterations", c.planner.max_iterations},
          {"phase_tolerance", c.planner.phase_tolerance},
          {"radius_cap_factor", c.planner.radius_cap_factor},
          {"region_sampling", toString(c.planner.region_sampling)},
          {"stop_rule", toString(c.planner.stop_rule)},
          {"seed", c.planner.seed}};
}

RunConfig runConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  static const std::set<std::string> known{"mu",    "step",           "goal_radius",      "beta1",
                                           "beta2", "max_iterations", "phase_tolerance",  "radius_cap_factor",
                                           "region_sampling", "stop_rule", "seed"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw std::invalid_argument("unknown config key: " + key);
  }
  RunConfig c;
  try {
    c.planner.mu = j.value("mu", c.planner.mu);
    c.planner.step = j.value("step", c.planner.step);
    c.goal_radius = j.value("goal_radius", c.goal_radius);
    c.cost.beta1 = j.value("beta1", c.cost.beta1);
    c.cost.beta2 = j.value("beta2", c.cost.beta2);
    c.planner.max_iterations = j.value("max_iterations", c.planner.max_iterations);
    c.planner.phase_tolerance = j.value("phase_tolerance", c.planner.phase_tolerance);
    c.planner.radius_cap_factor = j.value("radius_cap_factor", c.planner.radius_cap_factor);
    c.planner.seed = j.value("seed", c.planner.seed);
    if (j.contains("region_sampling")) {
      c.planner.region_sampling = regionSamplingFromString(j.at("region_sampling").get<std::string>());
    }
    if (j.contains("stop_rule")) c.planner.stop_rule = stopRuleFromString(j.at("stop_rule").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad config value: ") + e.what());
  }
  c.planner.validate();
  c.cost.validate();
  if (!(c.goal_radius > 0.0)) throw std::invalid_argument("goal_radius must be positive");
  return c;
}

std::uint64_t problemDigest(const PlanningProblem& problem) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ULL;
    }
  };
  const Index3& d = problem.grid.dims();
  const std::int32_t dims[3] = {d.x, d.y, d.z};
  mix(dims, sizeof dims);
  const double scalars[10] = {problem.grid.voxelSize(), problem.x_init.x,  problem.x_init.y,
                              problem.x_init.z,         problem.x_goal.x,  problem.x_goal.y,
                              problem.x_goal.z,         problem.goal_radius, problem.cost_params.beta1,
                              problem.cost_params.beta2};
  mix(scalars, sizeof scalars);
  const auto cells = problem.grid.cells();
  mix(cells.data(), cells.size());
  return h;
}

nlohmann::json planResultToJson(const PlanResult& result, const PlanningProblem& problem, const RunConfig& config) {
  std::ostringstream digest;
  digest << std::hex << std::setw(16) << std::setfill('0') << problemDigest(problem);

  nlohmann::json path = nlohmann::json::array();
  if (result.best_path) {
    for (const Vec3& p : *result.best_path) path.push_back({p.x, p.y, p.z});
  }
  nlohmann::json log = nlohmann::json::array();
  for (const IterationLog& e : result.log) {
    log.push_back({{"iteration", e.iteration},
                   {"nodes", e.node_count},
                   {"best_cost", costOrNull(e.best_cost)},
                   {"elapsed_seconds", e.elapsed_seconds},
                   {"sample", toString(e.source)}});
  }
  return {{"problem_digest", digest.str()},
          {"planner", toString(result.planner)},
          {"config", toJson(config)},
          {"solved", result.solved()},
          {"best_cost", costOrNull(result.best_cost)},
          {"path", std::move(path)},
          {"log", std::move(log)}};
}

}  // namespace pierguard
