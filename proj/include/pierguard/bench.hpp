#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pierguard/heuristics.hpp"
#include "pierguard/planners.hpp"

namespace pierguard {

// --- benchmark maps ------------------------------------------------------------

enum class MapStyle {
  kSpheres,   // low-lying spherical clutter
  kPier,      // spherical clutter plus pier-pillar cylinders
  kDensity,   // spheres anywhere in the volume up to a target occupied fraction
  kCorridor,  // solid block with an L-shaped axis-aligned tunnel
};

const char* toString(MapStyle style);
MapStyle mapStyleFromString(const std::string& name);

struct MapRecipe {
  MapStyle style = MapStyle::kSpheres;
  int size = 64;              // voxels per axis
  int sphere_count = 400;     // kSpheres / kPier
  int cylinder_count = 12;    // kPier
  double density = 0.10;      // kDensity
  int dilation_radius = 2;    // oracle region
};

/// A solvable benchmark instance with its A* reference cost and oracle region.
struct BenchMap {
  std::string id;
  std::uint64_t seed = 0;  // generator seed actually used
  PlanningProblem problem;
  double reference_cost = 0.0;
  HeuristicRegion region;
};

/// Generates a solvable instance. Seeds are advanced deterministically
/// until start and goal are free and connected. Throws std::runtime_error
/// if no solvable instance appears within `max_attempts` seeds.
BenchMap makeBenchMap(const MapRecipe& recipe, std::uint64_t seed, double goal_radius = 1.5,
                      CostParams cost = {}, int max_attempts = 1000);

// --- trials ---------------------------------------------------------------------

struct TrialRecord {
  std::string planner;
  std::string map_id;
  std::uint64_t seed = 0;
  std::optional<std::size_t> init_iter;
  std::optional<std::size_t> init_nodes;
  std::optional<double> init_time_s;
  std::optional<double> init_cost;
  std::optional<std::size_t> opt_iter;
  std::optional<std::size_t> opt_nodes;
  std::optional<double> opt_time_s;
  bool success = false;
  std::string error;

  bool operator==(const TrialRecord&) const = default;
};

/// Initial phase: first logged iteration with a finite best cost. Optimal
/// phase: first iteration with best_cost <= (1 + tolerance) * reference.
TrialRecord extractRecord(const std::string& planner, const std::string& map_id, std::uint64_t seed,
                          const PlanResult& result, std::optional<double> reference_cost, double tolerance);

/// Runs one seeded plan; config.seed is replaced by `seed` and the reference
/// cost by the map's. Planner exceptions become a failed record. Throws
/// std::invalid_argument if PierGuard is requested without a region.
TrialRecord runTrial(PlannerKind planner, const PlanningProblem& problem, const HeuristicRegion* region,
                     double reference_cost, const std::string& map_id, const PlannerConfig& config,
                     std::uint64_t seed);

struct MetricSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 when count < 2

  bool operator==(const MetricSummary&) const = default;
};

struct PlannerSummary {
  std::string planner;
  std::size_t trials = 0;
  std::size_t successes = 0;
  MetricSummary init_iter, init_nodes, init_time_s, init_cost, opt_iter, opt_nodes, opt_time_s;

  bool operator==(const PlannerSummary&) const = default;
};

struct SuiteReport {
  std::vector<PlannerSummary> summaries;
  std::vector<TrialRecord> records;
  std::string config_json;  // echo of the configuration used

  bool operator==(const SuiteReport&) const = default;
};

/// Seed of trial (map, planner, repetition) under a suite seed.
std::uint64_t trialSeed(std::uint64_t suite_seed, std::size_t map_index, std::size_t planner_index,
                        std::size_t repetition);

/// Per-planner aggregates over `records`, planners in first-appearance order.
std::vector<PlannerSummary> summarize(std::span<const TrialRecord> records);

/// Cross product maps x planners x repetitions. Throws std::invalid_argument
/// on empty inputs or zero repetitions.
SuiteReport runSuite(std::span<const BenchMap> maps, std::span<const PlannerKind> planners, std::size_t repetitions,
                     const PlannerConfig& config, std::uint64_t suite_seed);

enum class ReportFormat { kCsv, kJson };
ReportFormat reportFormatFromString(const std::string& name);

inline constexpr const char* kCsvHeader =
    "planner,map_id,seed,init_iter,init_nodes,init_time_s,init_cost,opt_iter,opt_nodes,opt_time_s,success";

std::string emitReport(const SuiteReport& report, ReportFormat format);
SuiteReport parseReportJson(const std::string& text);

}  // namespace pierguard
