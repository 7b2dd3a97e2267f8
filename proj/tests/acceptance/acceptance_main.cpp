// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: acceptance [criterion numbers...]   (default: all)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "pierguard/bench.hpp"
#include "pierguard/connectivity.hpp"
#include "pierguard/cost_geometry.hpp"
#include "pierguard/errors.hpp"
#include "pierguard/oracle.hpp"
#include "pierguard/planners.hpp"
#include "pierguard/search_tree.hpp"

using namespace pierguard;

namespace {

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

constexpr PlannerKind kAllPlanners[] = {PlannerKind::kRrtStar, PlannerKind::kInformedRrtStar,
                                        PlannerKind::kRrtConnect, PlannerKind::kPierGuard};

OccupancyGrid randomVoxels(Index3 dims, double fill, std::uint64_t seed) {
  OccupancyGrid grid(dims);
  Rng rng(seed);
  for (std::int64_t i = 0; i < grid.voxelCount(); ++i)
    if (rng.uniform01() < fill) grid.setOccupied(grid.fromLinear(i));
  return grid;
}

Index3 randomFreeVoxel(const OccupancyGrid& grid, Rng& rng) {
  for (;;) {
    const Index3 v = grid.fromLinear(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(grid.voxelCount()))));
    if (!grid.occupied(v)) return v;
  }
}

// --- 1 ------------------------------------------------------------------------

Outcome oracleEquivalence() {
  const auto t0 = Clock::now();
  std::size_t compared = 0, mismatches = 0;
  auto compare = [&](const OccupancyGrid& g, const Index3& s, const Index3& e) {
    bool a_none = false, d_none = false;
    double a = 0, d = 0;
    try { a = astarPlan(g, s, e).cost; } catch (const NoPathError&) { a_none = true; }
    try { d = dijkstraOracle(g, s, e); } catch (const NoPathError&) { d_none = true; }
    if (a_none != d_none || (!a_none && a != d)) ++mismatches;
    if (!a_none && !d_none) ++compared;
  };
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto grid = randomVoxels({16, 16, 16}, 0.3, 1000 + seed);
    Rng rng(seed);
    compare(grid, randomFreeVoxel(grid, rng), randomFreeVoxel(grid, rng));
  }
  const auto maze = randomVoxels({6, 6, 6}, 0.35, 4242);
  std::vector<Index3> free_voxels;
  for (std::int64_t i = 0; i < maze.voxelCount(); ++i)
    if (!maze.occupied(maze.fromLinear(i))) free_voxels.push_back(maze.fromLinear(i));
  for (const auto& s : free_voxels)
    for (const auto& e : free_voxels) compare(maze, s, e);
  const double secs = secondsSince(t0);
  return {mismatches == 0 && secs < 60.0,
          fmt("%zu solvable instances, %zu mismatches, %.1f s (budget 60 s)", compared, mismatches, secs)};
}

// --- 2 ------------------------------------------------------------------------

Outcome treeInvariants() {
  std::size_t audits = 0, violations = 0;
  for (std::uint64_t run = 0; run < 20; ++run) {
    MapRecipe recipe;
    recipe.style = run % 2 == 0 ? MapStyle::kSpheres : MapStyle::kPier;
    recipe.size = 64;
    auto map = makeBenchMap(recipe, 500 + run);
    map.problem.cost_params.beta2 = run % 4 < 2 ? 0.0 : 0.25;  // half the runs exercise turning costs
    PlannerConfig config;
    config.seed = run;
    config.max_iterations = 10000;
    config.observe_interval = 100;
    plan(PlannerKind::kPierGuard, map.problem, &map.region, config,
         [&](std::size_t, std::span<const SearchTree* const> trees) {
           for (const SearchTree* t : trees) violations += auditTree(*t, map.problem.grid, 1e-9).total();
           ++audits;
         });
  }
  return {violations == 0 && audits == 20 * 100, fmt("%zu audits over 20 runs, %zu violations", audits, violations)};
}

// --- 3 ------------------------------------------------------------------------

Outcome completeness() {
  std::size_t solved = 0, total = 0;
  std::string detail;
  for (PlannerKind kind : kAllPlanners) {
    std::size_t ok = 0, worst = 0;
    for (std::uint64_t i = 0; i < 20; ++i) {
      MapRecipe recipe;
      recipe.style = MapStyle::kDensity;
      recipe.size = 32;
      recipe.density = 0.30;
      const auto map = makeBenchMap(recipe, 3000 + i);
      PlannerConfig config;
      config.seed = i;
      config.max_iterations = 50000;
      config.stop_rule = StopRule::kFirstSolution;
      const auto rec = runTrial(kind, map.problem, &map.region, map.reference_cost, map.id, config, i);
      if (rec.success) {
        ++ok;
        worst = std::max(worst, *rec.init_iter);
      }
    }
    solved += ok;
    total += 20;
    detail += fmt("%s %zu/20 (worst %zu it); ", toString(kind), ok, worst);
  }
  return {solved == total, detail + "30% density 32^3, cap 50000"};
}

// --- 4 ------------------------------------------------------------------------

Outcome corridorOptimality() {
  MapRecipe recipe;
  recipe.style = MapStyle::kCorridor;
  recipe.size = 32;
  const auto map = makeBenchMap(recipe, 1);
  bool pass = true;
  std::string detail;
  for (PlannerKind kind : kAllPlanners) {
    std::size_t ok = 0;
    bool monotone = true;
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      PlannerConfig config;
      config.seed = seed;
      config.max_iterations = 20000;
      const auto r = plan(kind, map.problem, &map.region, config);
      for (std::size_t i = 1; i < r.log.size(); ++i) monotone = monotone && r.log[i].best_cost <= r.log[i - 1].best_cost;
      const double ratio = r.best_cost / map.reference_cost;
      worst = std::max(worst, ratio);
      ok += ratio <= 1.05 ? 1 : 0;
    }
    pass = pass && ok >= 18 && monotone;
    detail += fmt("%s %zu/20 (worst %.3f)%s; ", toString(kind), ok, worst, monotone ? "" : " NONMONOTONE");
  }
  return {pass, detail + fmt("A* %.3f, need >= 18/20 within 1.05", map.reference_cost)};
}

// --- 5 ------------------------------------------------------------------------

Outcome initialPhaseSpeedup() {
  const auto t0 = Clock::now();
  constexpr std::size_t kCap = 200000;
  double pg_iter = 0, rrt_iter = 0, pg_cost = 0, rrt_cost = 0;
  std::size_t pg_solved = 0, rrt_solved = 0, trials = 0;
  for (std::uint64_t m = 0; m < 10; ++m) {
    MapRecipe recipe;  // spheres, 64^3
    const auto map = makeBenchMap(recipe, 1000 + m);
    for (std::uint64_t s = 0; s < 10; ++s) {
      PlannerConfig config;
      config.max_iterations = kCap;
      config.stop_rule = StopRule::kFirstSolution;
      const std::uint64_t seed = trialSeed(5, m, 0, s);
      const auto pg = runTrial(PlannerKind::kPierGuard, map.problem, &map.region, map.reference_cost, map.id, config, seed);
      const auto rrt = runTrial(PlannerKind::kRrtStar, map.problem, nullptr, map.reference_cost, map.id, config, seed);
      // An unsolved trial counts at the cap.
      pg_iter += static_cast<double>(pg.init_iter.value_or(kCap));
      rrt_iter += static_cast<double>(rrt.init_iter.value_or(kCap));
      if (pg.init_cost) pg_cost += *pg.init_cost, ++pg_solved;
      if (rrt.init_cost) rrt_cost += *rrt.init_cost, ++rrt_solved;
      ++trials;
    }
  }
  const double n = static_cast<double>(trials);
  const double ratio = (pg_iter / n) / (rrt_iter / n);
  const double pg_mean_cost = pg_solved ? pg_cost / static_cast<double>(pg_solved) : INFINITY;
  const double rrt_mean_cost = rrt_solved ? rrt_cost / static_cast<double>(rrt_solved) : INFINITY;
  const double secs = secondsSince(t0);
  return {ratio <= 0.5 && pg_mean_cost <= rrt_mean_cost && pg_solved == trials && secs < 1800.0,
          fmt("init iter %.1f vs %.1f (ratio %.3f, reference 0.256), init cost %.2f vs %.2f (reference 92.10 vs 107.16), "
              "solved %zu/%zu and %zu/%zu, %.0f s (budget 1800 s)",
              pg_iter / n, rrt_iter / n, ratio, pg_mean_cost, rrt_mean_cost, pg_solved, trials, rrt_solved, trials, secs)};
}

// --- 6 ------------------------------------------------------------------------

Outcome samplerDistribution() {
  OccupancyGrid grid({32, 32, 32});
  PlanningProblem p{grid, {1.5, 1.5, 1.5}, {30.5, 30.5, 30.5}, 1.5, {}};
  const auto region = HeuristicRegion::fromMask(makeTrainingSample(p, 2).label);
  bool pass = true;
  std::string detail;
  for (double mu : {0.1, 0.3, 0.5}) {
    Rng rng(static_cast<std::uint64_t>(mu * 1000));
    std::size_t uniform = 0;
    for (int i = 0; i < 100000; ++i) uniform += neuralSample(region, grid, mu, rng).source == SampleSource::kUniform;
    const double freq = static_cast<double>(uniform) / 1e5;
    pass = pass && std::abs(freq - mu) <= 0.01;
    detail += fmt("mu %.1f -> %.4f; ", mu, freq);
  }
  Rng rng(6);
  const auto set = InformedSet::between(p.x_init, p.x_goal, 1.2 * distance(p.x_init, p.x_goal));
  std::size_t inside = 0;
  for (int i = 0; i < 100000; ++i) {
    const Vec3 q = sampleInformed(set, rng);
    inside += distance(q, set.focus1) + distance(q, set.focus2) <= set.c_best + 1e-9 ? 1 : 0;
  }
  pass = pass && inside == 100000;
  return {pass, detail + fmt("ellipsoid membership %zu/100000", inside)};
}

// --- 7 ------------------------------------------------------------------------

double bruteHausdorff(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  auto directed = [](const std::vector<Vec3>& x, const std::vector<Vec3>& y) {
    double worst = 0.0;
    for (const auto& p : x) {
      double best = INFINITY;
      for (const auto& q : y) best = std::min(best, distance(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

Outcome hausdorffCorrectness() {
  Rng rng(7);
  auto randomSet = [&] {
    std::vector<Vec3> out(1 + rng.below(60));
    for (auto& p : out) p = {rng.uniform(0, 20), rng.uniform(0, 20), rng.uniform(0, 20)};
    return out;
  };
  std::size_t exact = 0, symmetric = 0, triangle = 0;
  for (int i = 0; i < 100; ++i) {
    const auto a = randomSet(), b = randomSet();
    exact += hausdorffDistance(a, b) == bruteHausdorff(a, b) ? 1 : 0;
  }
  for (int i = 0; i < 100; ++i) {
    const auto a = randomSet(), b = randomSet(), c = randomSet();
    symmetric += hausdorffDistance(a, b) == hausdorffDistance(b, a) ? 1 : 0;
    triangle += hausdorffDistance(a, c) <= hausdorffDistance(a, b) + hausdorffDistance(b, c) + 1e-12 ? 1 : 0;
  }
  return {exact == 100 && symmetric == 100 && triangle == 100,
          fmt("oracle match %zu/100, symmetric %zu/100, triangle %zu/100", exact, symmetric, triangle)};
}

// --- 8 ------------------------------------------------------------------------

Outcome connectivity() {
  std::vector<RegionCase> oracle_cases, zero_cases, mixed;
  for (std::uint64_t i = 0; i < 10; ++i) {
    MapRecipe recipe;
    recipe.style = i % 2 == 0 ? MapStyle::kSpheres : MapStyle::kDensity;
    recipe.size = 32;
    recipe.sphere_count = 100;
    const auto map = makeBenchMap(recipe, 800 + i);
    oracle_cases.push_back({map.problem, map.region});
    zero_cases.push_back({map.problem, HeuristicRegion::empty(map.problem.grid.dims())});
    mixed.push_back(i < 7 ? oracle_cases.back() : zero_cases.back());
  }
  PlannerConfig config;
  config.seed = 8;
  const double s_oracle = regionConnectivityScore(oracle_cases, config, 3, 5000);
  const double s_zero = regionConnectivityScore(zero_cases, config, 3, 5000);
  const double s_mixed = regionConnectivityScore(mixed, config, 3, 5000);
  return {s_oracle == 1.0 && s_zero == 0.0 && s_mixed == 21.0 / 30.0,
          fmt("oracle %.3f (want 1), zero %.3f (want 0), 7:3 mix %.3f (want 0.700)", s_oracle, s_zero, s_mixed)};
}

// --- 9 ------------------------------------------------------------------------

Outcome scalingTrend() {
  constexpr std::size_t kMaps = 10, kReps = 10;
  std::vector<double> means;
  std::string detail;
  bool all_reached = true;
  double secs_128 = 0.0;
  for (int size : {32, 64, 128}) {
    const auto t0 = Clock::now();
    std::vector<BenchMap> maps;
    for (std::uint64_t m = 0; m < kMaps; ++m) {
      MapRecipe recipe;
      recipe.style = MapStyle::kDensity;
      recipe.size = size;
      recipe.density = 0.10;
      maps.push_back(makeBenchMap(recipe, 2000 + m));
    }
    PlannerConfig config;
    config.max_iterations = 100000;
    config.stop_rule = StopRule::kOptimalPhase;
    const PlannerKind planner[] = {PlannerKind::kPierGuard};
    const auto report = runSuite(maps, planner, kReps, config, 9);
    const auto& summary = report.summaries.front();
    all_reached = all_reached && summary.opt_iter.count == kMaps * kReps;
    means.push_back(summary.opt_iter.mean);
    detail += fmt("%d^3 %.1f (%zu/%zu reached); ", size, summary.opt_iter.mean, summary.opt_iter.count, kMaps * kReps);
    if (size == 128) secs_128 = secondsSince(t0);
  }
  const bool nondecreasing = means[0] <= means[1] && means[1] <= means[2];
  return {nondecreasing && all_reached && secs_128 < 3600.0,
          detail + fmt("reference 1350.6 -> 2320.5 -> 3560.3; 128^3 suite %.0f s (budget 3600 s)", secs_128)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"oracle equivalence", oracleEquivalence},
      {"tree invariants", treeInvariants},
      {"probabilistic completeness", completeness},
      {"asymptotic optimality trend", corridorOptimality},
      {"initial-phase speedup over RRT*", initialPhaseSpeedup},
      {"sampler distribution", samplerDistribution},
      {"hausdorff correctness", hausdorffCorrectness},
      {"connectivity metric", connectivity},
      {"map-size scaling trend", scalingTrend},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("AC%d %s %s: %s\n", id, out.pass ? "PASS" : "FAIL", criteria[i].first, out.detail.c_str());
    std::fflush(stdout);
    failures += out.pass ? 0 : 1;
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
