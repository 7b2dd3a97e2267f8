// pierguard: map generation, dataset export, planning, benchmarking and region scoring.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "pierguard/bench.hpp"
#include "pierguard/connectivity.hpp"
#include "pierguard/errors.hpp"
#include "pierguard/grid_io.hpp"
#include "pierguard/oracle.hpp"
#include "pierguard/serialization.hpp"

using namespace pierguard;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string config_path;
  std::string out;
};

struct MapArgs {
  std::string style = "spheres";
  int size = 64;
  double density = 0.10;
  int spheres = 400;
  int cylinders = 12;
  int dilation = 2;

  void attach(CLI::App* cmd) {
    cmd->add_option("--style", style, "spheres | pier | density | corridor")->capture_default_str();
    cmd->add_option("--size", size, "voxels per axis")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--density", density, "occupied fraction for the density style")->capture_default_str();
    cmd->add_option("--spheres", spheres, "sphere count per 64x64 footprint")->capture_default_str();
    cmd->add_option("--cylinders", cylinders, "pier pillar count")->capture_default_str();
    cmd->add_option("--dilation", dilation, "oracle region dilation radius")->capture_default_str();
  }

  MapRecipe recipe() const {
    MapRecipe r;
    r.style = mapStyleFromString(style);
    r.size = size;
    r.density = density;
    r.sphere_count = spheres;
    r.cylinder_count = cylinders;
    r.dilation_radius = dilation;
    return r;
  }
};

RunConfig loadConfig(const Globals& g) {
  RunConfig rc;
  if (!g.config_path.empty()) {
    std::ifstream in(g.config_path);
    if (!in) throw std::runtime_error("cannot open config " + g.config_path);
    rc = runConfigFromJson(json::parse(in));
  }
  rc.planner.seed = g.seed;
  return rc;
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + g.out);
  out << text;
}

json vecJson(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 parseVec(const std::vector<double>& v) { return {v.at(0), v.at(1), v.at(2)}; }

PlanningProblem problemFromSample(const TrainingSample& s, const RunConfig& rc) {
  std::optional<Index3> start, goal;
  const OccupancyGrid grid = OccupancyGrid::fromLabels(s.e2);
  for (std::int64_t i = 0; i < grid.voxelCount(); ++i) {
    const auto v = s.e1.values[static_cast<std::size_t>(i)];
    if (v == 1) start = grid.fromLinear(i);
    if (v == 2) goal = grid.fromLinear(i);
  }
  if (!start || !goal) throw FormatError("sample lacks a start or goal voxel");
  return {grid, grid.voxelCenter(*start), grid.voxelCenter(*goal), rc.goal_radius, rc.cost};
}

// --- subcommands ----------------------------------------------------------------

void runGenmap(const Globals& g, const MapArgs& m, const std::string& region_path) {
  const RunConfig rc = loadConfig(g);
  if (g.out.empty()) throw std::invalid_argument("genmap needs --out <file.pgrid>");
  const BenchMap map = makeBenchMap(m.recipe(), g.seed, rc.goal_radius, rc.cost);
  writeFileBytes(g.out, encodePgrid(map.problem.grid.toLabels()));
  if (!region_path.empty()) writeFileBytes(region_path, saveRegion(map.region));
  const json info{{"id", map.id},
                  {"generator_seed", map.seed},
                  {"start", vecJson(map.problem.x_init)},
                  {"goal", vecJson(map.problem.x_goal)},
                  {"reference_cost", map.reference_cost},
                  {"occupied_fraction", map.problem.grid.occupiedFraction()}};
  std::cout << info.dump() << "\n";
}

void runDataset(const Globals& g, const MapArgs& m, int count) {
  const RunConfig rc = loadConfig(g);
  if (g.out.empty()) throw std::invalid_argument("dataset needs --out <directory>");
  const fs::path dir(g.out);
  fs::create_directories(dir);
  DatasetManifest manifest;
  manifest.seed = g.seed;
  manifest.dilation_radius = m.dilation;
  for (int i = 0; i < count; ++i) {
    const BenchMap map = makeBenchMap(m.recipe(), combineSeeds(g.seed, static_cast<std::uint64_t>(i)), rc.goal_radius, rc.cost);
    char name[32];
    std::snprintf(name, sizeof name, "sample_%05d.psamp", i);
    writeFileBytes(dir / name, encodeSample(makeTrainingSample(map.problem, m.dilation)));
    manifest.files.emplace_back(name);
  }
  writeManifest(dir, manifest);
  std::cout << "wrote " << count << " samples to " << dir.string() << "\n";
}

struct PlanArgs {
  std::string planner = "pierguard";
  std::string map_path;
  std::string region_path;
  std::vector<double> start, goal;
  std::optional<double> mu;
  std::optional<std::size_t> iterations;
};

void runPlan(const Globals& g, const MapArgs& m, const PlanArgs& a) {
  RunConfig rc = loadConfig(g);
  if (a.mu) rc.planner.mu = *a.mu;
  if (a.iterations) rc.planner.max_iterations = *a.iterations;
  const PlannerKind kind = plannerKindFromString(a.planner);

  std::optional<HeuristicRegion> region;
  const PlanningProblem problem = [&]() -> PlanningProblem {
    if (a.map_path.empty()) {
      BenchMap map = makeBenchMap(m.recipe(), g.seed, rc.goal_radius, rc.cost);
      region = map.region;
      if (!rc.planner.reference_cost) rc.planner.reference_cost = map.reference_cost;
      return map.problem;
    }
    if (a.start.size() != 3 || a.goal.size() != 3) throw std::invalid_argument("--map needs --start and --goal");
    PlanningProblem p{OccupancyGrid::fromLabels(decodePgrid(readFileBytes(a.map_path))), parseVec(a.start),
                      parseVec(a.goal), rc.goal_radius, rc.cost};
    p.validate();
    if (kind == PlannerKind::kPierGuard && a.region_path.empty()) {
      region = HeuristicRegion::fromMask(makeTrainingSample(p, m.dilation).label);
    }
    return p;
  }();
  if (!a.region_path.empty()) region = loadRegion(readFileBytes(a.region_path));

  const PlanResult result = plan(kind, problem, region ? &*region : nullptr, rc.planner);
  emit(g, planResultToJson(result, problem, rc).dump(2) + "\n");
  std::cerr << toString(kind) << ": " << (result.solved() ? "solved" : "no path") << ", best cost "
            << result.best_cost << " after " << result.log.size() << " iterations\n";
}

void runBench(const Globals& g, const MapArgs& m, const std::vector<std::string>& planner_names, int maps_count,
              int reps, const std::string& format, std::optional<std::size_t> iterations) {
  RunConfig rc = loadConfig(g);
  if (iterations) rc.planner.max_iterations = *iterations;
  std::vector<PlannerKind> planners;
  for (const auto& n : planner_names) planners.push_back(plannerKindFromString(n));
  const ReportFormat fmt = reportFormatFromString(format);
  std::vector<BenchMap> maps;
  for (int i = 0; i < maps_count; ++i) {
    maps.push_back(makeBenchMap(m.recipe(), combineSeeds(g.seed, static_cast<std::uint64_t>(i)), rc.goal_radius, rc.cost));
  }
  const SuiteReport report = runSuite(maps, planners, static_cast<std::size_t>(reps), rc.planner, g.seed);
  emit(g, emitReport(report, fmt));
  for (const auto& s : report.summaries) {
    std::cerr << s.planner << ": " << s.successes << "/" << s.trials << " solved, init_iter " << s.init_iter.mean
              << ", opt_iter " << s.opt_iter.mean << " (" << s.opt_iter.count << " reached)\n";
  }
}

void runRegionScore(const Globals& g, const std::string& dataset_dir, const std::string& regions_dir, int trials,
                    std::size_t cap) {
  const RunConfig rc = loadConfig(g);
  const DatasetManifest manifest = readManifest(dataset_dir);
  std::vector<RegionCase> cases;
  for (const auto& file : manifest.files) {
    const TrainingSample sample = decodeSample(readFileBytes(fs::path(dataset_dir) / file));
    PlanningProblem problem = problemFromSample(sample, rc);
    if (regions_dir.empty()) {
      cases.push_back({std::move(problem), HeuristicRegion::fromMask(sample.label)});
    } else {
      const fs::path region_file = fs::path(regions_dir) / fs::path(file).replace_extension(".pheur");
      cases.push_back({std::move(problem), loadRegion(readFileBytes(region_file))});
    }
  }
  const double score = regionConnectivityScore(cases, rc.planner, static_cast<std::size_t>(trials), cap);
  emit(g, json{{"cases", cases.size()}, {"trials", trials}, {"iteration_cap", cap}, {"connectivity", score}}.dump() + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PierGuard heuristic-region bidirectional RRT* planner"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "master seed")->capture_default_str();
  app.add_option("--config", g.config_path, "run configuration JSON");
  app.add_option("--out", g.out, "output file or directory");

  MapArgs map_args;

  auto* genmap = app.add_subcommand("genmap", "generate a benchmark map (PGRID)");
  map_args.attach(genmap);
  std::string region_out;
  genmap->add_option("--region", region_out, "also write the oracle region (PHEUR)");

  auto* dataset = app.add_subcommand("dataset", "export training samples (PSAMP) and manifest.json");
  MapArgs dataset_map;
  dataset_map.attach(dataset);
  int count = 100;
  dataset->add_option("--count", count, "number of samples")->capture_default_str()->check(CLI::PositiveNumber);

  auto* plan_cmd = app.add_subcommand("plan", "run one planner and write the result JSON");
  MapArgs plan_map;
  plan_map.attach(plan_cmd);
  PlanArgs plan_args;
  plan_cmd->add_option("--planner", plan_args.planner, "rrt_star | informed_rrt_star | rrt_connect | pierguard")
      ->capture_default_str();
  plan_cmd->add_option("--map", plan_args.map_path, "PGRID map (default: generate from --style)");
  plan_cmd->add_option("--region", plan_args.region_path, "PHEUR region (default: oracle A* + dilation)");
  plan_cmd->add_option("--start", plan_args.start, "start x y z")->expected(3);
  plan_cmd->add_option("--goal", plan_args.goal, "goal x y z")->expected(3);
  plan_cmd->add_option("--mu", plan_args.mu, "uniform-sampling probability");
  plan_cmd->add_option("--iterations", plan_args.iterations, "iteration budget");

  auto* bench = app.add_subcommand("bench", "run a seeded benchmark suite (CSV or JSON)");
  MapArgs bench_map;
  bench_map.attach(bench);
  std::vector<std::string> planner_names{"rrt_star", "pierguard"};
  int maps_count = 10, reps = 10;
  std::string format = "csv";
  std::optional<std::size_t> bench_iterations;
  bench->add_option("--planners", planner_names, "planner list")->delimiter(',')->capture_default_str();
  bench->add_option("--maps", maps_count, "map count")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--reps", reps, "seeds per map and planner")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--format", format, "csv | json")->capture_default_str();
  bench->add_option("--iterations", bench_iterations, "iteration budget");

  auto* score = app.add_subcommand("region-score", "connectivity score of regions over a dataset");
  std::string dataset_dir, regions_dir;
  int trials = 1;
  std::size_t cap = 5000;
  score->add_option("--dataset", dataset_dir, "dataset directory with manifest.json")->required();
  score->add_option("--regions", regions_dir, "directory of <sample>.pheur files (default: dataset labels)");
  score->add_option("--trials", trials, "runs per case")->capture_default_str()->check(CLI::PositiveNumber);
  score->add_option("--cap", cap, "iteration cap per run")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*genmap) runGenmap(g, map_args, region_out);
    if (*dataset) runDataset(g, dataset_map, count);
    if (*plan_cmd) runPlan(g, plan_map, plan_args);
    if (*bench) runBench(g, bench_map, planner_names, maps_count, reps, format, bench_iterations);
    if (*score) runRegionScore(g, dataset_dir, regions_dir, trials, cap);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
