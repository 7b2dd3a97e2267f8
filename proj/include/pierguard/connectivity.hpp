#pragma once

#include <span>

#include "pierguard/heuristics.hpp"
#include "pierguard/planners.hpp"

namespace pierguard {

struct RegionCase {
  PlanningProblem problem;
  HeuristicRegion region;
};

/// Fraction of (case, trial) runs in which PierGuard, sampling only inside
/// the region (mu = 0, no uniform fallback), finds a path within
/// `iteration_cap` iterations. Seeds derive from config.seed, the case index
/// and the trial index. Throws std::invalid_argument for an empty dataset or
/// zero trials.
double regionConnectivityScore(std::span<const RegionCase> dataset, const PlannerConfig& config,
                               std::size_t trials, std::size_t iteration_cap);

}  // namespace pierguard
