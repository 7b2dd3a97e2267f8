#include "pierguard/connectivity.hpp"

#include <stdexcept>

namespace pierguard {

double regionConnectivityScore(std::span<const RegionCase> dataset, const PlannerConfig& config,
                               std::size_t trials, std::size_t iteration_cap) {
  if (dataset.empty()) throw std::invalid_argument("connectivity score needs a nonempty dataset");
  if (trials == 0) throw std::invalid_argument("connectivity score needs at least one trial");

  PlannerConfig run = config;
  run.mu = 0.0;
  run.fallback_to_uniform = false;
  run.stop_rule = StopRule::kFirstSolution;
  run.max_iterations = iteration_cap;
  run.observe_interval = 0;

  std::size_t successes = 0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    for (std::size_t t = 0; t < trials; ++t) {
      run.seed = combineSeeds(combineSeeds(config.seed, i), t);
      if (planPierGuard(dataset[i].problem, dataset[i].region, run).solved()) ++successes;
    }
  }
  return static_cast<double>(successes) / static_cast<double>(dataset.size() * trials);
}

}  // namespace pierguard
