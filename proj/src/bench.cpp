#include "pierguard/bench.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pierguard/errors.hpp"
#include "pierguard/oracle.hpp"

namespace pierguard {

const char* toString(MapStyle style) {
  switch (style) {
    case MapStyle::kSpheres: return "spheres";
    case MapStyle::kPier: return "pier";
    case MapStyle::kDensity: return "density";
    case MapStyle::kCorridor: return "corridor";
  }
  return "unknown";
}

MapStyle mapStyleFromString(const std::string& name) {
  for (MapStyle s : {MapStyle::kSpheres, MapStyle::kPier, MapStyle::kDensity, MapStyle::kCorridor}) {
    if (name == toString(s)) return s;
  }
  throw std::invalid_argument("unknown map style: " + name);
}

namespace {

struct Endpoints {
  Vec3 start;
  Vec3 goal;
};

Endpoints endpointsFor(const MapRecipe& r) {
  const double n = r.size;
  switch (r.style) {
    case MapStyle::kSpheres:
    case MapStyle::kPier:
      return {{4.5, 4.5, 2.5}, {n - 4.5, n - 4.5, 2.5}};
    case MapStyle::kDensity:
      return {{2.5, 2.5, 2.5}, {n - 2.5, n - 2.5, n - 2.5}};
    case MapStyle::kCorridor: {
      const int w = r.size / 3;
      const int c = r.size / 2;
      return {{4.5, 2 + w / 2 + 0.5, c + 0.5}, {r.size - 2 - w / 2 + 0.5, n - 4.5, c + 0.5}};
    }
  }
  return {};
}

// Solid block with an L-shaped tunnel of square cross-section size/3: one leg
// along x, one along y, both at mid height.
OccupancyGrid corridorGrid(int n) {
  OccupancyGrid grid({n, n, n});
  const int w = n / 3;
  const int c = n / 2;
  for (int z = 0; z < n; ++z)
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) {
        const bool z_in = z >= c - w / 2 && z < c - w / 2 + w;
        const bool leg1 = x >= 2 && x < n - 2 && y >= 2 && y < 2 + w;
        const bool leg2 = x >= n - 2 - w && x < n - 2 && y >= 2 && y < n - 2;
        grid.setOccupied({x, y, z}, !(z_in && (leg1 || leg2)));
      }
  return grid;
}

OccupancyGrid generateFor(const MapRecipe& r, std::uint64_t seed, const Endpoints& ends) {
  const Index3 dims{r.size, r.size, r.size};
  // Counts are given for a 64 x 64 footprint; scale with area.
  const double area_scale = (r.size / 64.0) * (r.size / 64.0);
  switch (r.style) {
    case MapStyle::kSpheres:
      return generateMapSpheres(dims, {static_cast<int>(std::lround(r.sphere_count * area_scale))}, seed);
    case MapStyle::kPier:
      return generateMapCylinders(dims, {static_cast<int>(std::lround(r.sphere_count * area_scale))},
                                  {static_cast<int>(std::lround(r.cylinder_count * area_scale))}, seed);
    case MapStyle::kDensity: {
      const std::array<Vec3, 2> keep{ends.start, ends.goal};
      return generateMapDensity(dims, r.density, {0.4, 2.5}, seed, keep, 1.5);
    }
    case MapStyle::kCorridor:
      return corridorGrid(r.size);
  }
  throw std::invalid_argument("unknown map style");
}

}  // namespace

BenchMap makeBenchMap(const MapRecipe& recipe, std::uint64_t seed, double goal_radius, CostParams cost,
                      int max_attempts) {
  if (recipe.size < 8) throw std::invalid_argument("benchmark maps need size >= 8");
  const Endpoints ends = endpointsFor(recipe);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : combineSeeds(seed, static_cast<std::uint64_t>(attempt));
    OccupancyGrid grid = generateFor(recipe, s, ends);
    if (!isStateFree(grid, ends.start) || !isStateFree(grid, ends.goal)) continue;
    GridPath path;
    try {
      path = astarPlan(grid, *grid.voxelOf(ends.start), *grid.voxelOf(ends.goal));
    } catch (const NoPathError&) {
      continue;
    }
    HeuristicRegion region = HeuristicRegion::fromMask(dilatePath(path, grid, recipe.dilation_radius));
    std::ostringstream id;
    id << toString(recipe.style) << '-' << recipe.size << '-' << s;
    PlanningProblem problem{std::move(grid), ends.start, ends.goal, goal_radius, cost};
    return {id.str(), s, std::move(problem), cost.beta1 * path.cost, std::move(region)};
  }
  throw std::runtime_error("no solvable benchmark map found");
}

TrialRecord extractRecord(const std::string& planner, const std::string& map_id, std::uint64_t seed,
                          const PlanResult& result, std::optional<double> reference_cost, double tolerance) {
  TrialRecord rec;
  rec.planner = planner;
  rec.map_id = map_id;
  rec.seed = seed;
  for (const IterationLog& e : result.log) {
    if (!rec.init_iter && std::isfinite(e.best_cost)) {
      rec.init_iter = e.iteration;
      rec.init_nodes = e.node_count;
      rec.init_time_s = e.elapsed_seconds;
      rec.init_cost = e.best_cost;
    }
    if (reference_cost && e.best_cost <= (1.0 + tolerance) * *reference_cost) {
      rec.opt_iter = e.iteration;
      rec.opt_nodes = e.node_count;
      rec.opt_time_s = e.elapsed_seconds;
      break;
    }
  }
  rec.success = rec.init_iter.has_value();
  return rec;
}

TrialRecord runTrial(PlannerKind planner, const PlanningProblem& problem, const HeuristicRegion* region,
                     double reference_cost, const std::string& map_id, const PlannerConfig& config,
                     std::uint64_t seed) {
  if (planner == PlannerKind::kPierGuard && region == nullptr) {
    throw std::invalid_argument("pierguard trials need a heuristic region");
  }
  PlannerConfig run = config;
  run.seed = seed;
  run.reference_cost = reference_cost;
  try {
    const PlanResult result = plan(planner, problem, region, run);
    return extractRecord(toString(planner), map_id, seed, result, reference_cost, run.phase_tolerance);
  } catch (const std::exception& e) {
    TrialRecord rec;
    rec.planner = toString(planner);
    rec.map_id = map_id;
    rec.seed = seed;
    rec.error = e.what();
    return rec;
  }
}

std::uint64_t trialSeed(std::uint64_t suite_seed, std::size_t map_index, std::size_t planner_index,
                        std::size_t repetition) {
  return combineSeeds(combineSeeds(combineSeeds(suite_seed, map_index), planner_index), repetition);
}

namespace {

template <typename T>
MetricSummary summarizeMetric(std::span<const TrialRecord> records, const std::string& planner,
                              std::optional<T> TrialRecord::*field) {
  MetricSummary s;
  double sum = 0.0;
  for (const auto& r : records) {
    if (r.planner == planner && (r.*field)) {
      sum += static_cast<double>(*(r.*field));
      ++s.count;
    }
  }
  if (s.count == 0) return s;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double sq = 0.0;
    for (const auto& r : records) {
      if (r.planner == planner && (r.*field)) {
        const double d = static_cast<double>(*(r.*field)) - s.mean;
        sq += d * d;
      }
    }
    s.stddev = std::sqrt(sq / static_cast<double>(s.count - 1));
  }
  return s;
}

}  // namespace

std::vector<PlannerSummary> summarize(std::span<const TrialRecord> records) {
  std::vector<PlannerSummary> out;
  for (const auto& r : records) {
    auto it = std::find_if(out.begin(), out.end(), [&](const PlannerSummary& p) { return p.planner == r.planner; });
    if (it == out.end()) {
      out.push_back({});
      out.back().planner = r.planner;
      it = out.end() - 1;
    }
    ++it->trials;
    if (r.success) ++it->successes;
  }
  for (auto& p : out) {
    p.init_iter = summarizeMetric(records, p.planner, &TrialRecord::init_iter);
    p.init_nodes = summarizeMetric(records, p.planner, &TrialRecord::init_nodes);
    p.init_time_s = summarizeMetric(records, p.planner, &TrialRecord::init_time_s);
    p.init_cost = summarizeMetric(records, p.planner, &TrialRecord::init_cost);
    p.opt_iter = summarizeMetric(records, p.planner, &TrialRecord::opt_iter);
    p.opt_nodes = summarizeMetric(records, p.planner, &TrialRecord::opt_nodes);
    p.opt_time_s = summarizeMetric(records, p.planner, &TrialRecord::opt_time_s);
  }
  return out;
}

SuiteReport runSuite(std::span<const BenchMap> maps, std::span<const PlannerKind> planners, std::size_t repetitions,
                     const PlannerConfig& config, std::uint64_t suite_seed) {
  if (maps.empty() || planners.empty() || repetitions == 0) {
    throw std::invalid_argument("suite needs maps, planners and at least one repetition");
  }
  SuiteReport report;
  for (std::size_t m = 0; m < maps.size(); ++m) {
    for (std::size_t p = 0; p < planners.size(); ++p) {
      for (std::size_t rep = 0; rep < repetitions; ++rep) {
        const BenchMap& map = maps[m];
        report.records.push_back(runTrial(planners[p], map.problem, &map.region, map.reference_cost, map.id, config,
                                          trialSeed(suite_seed, m, p, rep)));
      }
    }
  }
  report.summaries = summarize(report.records);
  nlohmann::json echo{{"mu", config.mu},
                      {"step", config.step},
                      {"max_iterations", config.max_iterations},
                      {"phase_tolerance", config.phase_tolerance},
                      {"radius_cap_factor", config.radius_cap_factor},
                      {"repetitions", repetitions},
                      {"suite_seed", suite_seed}};
  report.config_json = echo.dump();
  return report;
}

ReportFormat reportFormatFromString(const std::string& name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw std::invalid_argument("unknown report format: " + name);
}

namespace {

std::string formatDouble(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

template <typename T>
std::string csvField(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_floating_point_v<T>) {
    return formatDouble(*v);
  } else {
    return std::to_string(*v);
  }
}

std::string csvEscape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

template <typename T>
nlohmann::json optJson(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <typename T>
std::optional<T> optFrom(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

nlohmann::json metricJson(const MetricSummary& m) {
  return {{"count", m.count}, {"mean", m.mean}, {"stddev", m.stddev}};
}

MetricSummary metricFrom(const nlohmann::json& j) {
  return {j.at("count").get<std::size_t>(), j.at("mean").get<double>(), j.at("stddev").get<double>()};
}

}  // namespace

std::string emitReport(const SuiteReport& report, ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : report.records) {
      out << csvEscape(r.planner) << ',' << csvEscape(r.map_id) << ',' << r.seed << ',' << csvField(r.init_iter)
          << ',' << csvField(r.init_nodes) << ',' << csvField(r.init_time_s) << ',' << csvField(r.init_cost) << ','
          << csvField(r.opt_iter) << ',' << csvField(r.opt_nodes) << ',' << csvField(r.opt_time_s) << ','
          << (r.success ? "true" : "false") << '\n';
    }
    return out.str();
  }

  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : report.records) {
    records.push_back({{"planner", r.planner},
                       {"map_id", r.map_id},
                       {"seed", r.seed},
                       {"init_iter", optJson(r.init_iter)},
                       {"init_nodes", optJson(r.init_nodes)},
                       {"init_time_s", optJson(r.init_time_s)},
                       {"init_cost", optJson(r.init_cost)},
                       {"opt_iter", optJson(r.opt_iter)},
                       {"opt_nodes", optJson(r.opt_nodes)},
                       {"opt_time_s", optJson(r.opt_time_s)},
                       {"success", r.success},
                       {"error", r.error}});
  }
  nlohmann::json summaries = nlohmann::json::array();
  for (const auto& s : report.summaries) {
    summaries.push_back({{"planner", s.planner},
                         {"trials", s.trials},
                         {"successes", s.successes},
                         {"init_iter", metricJson(s.init_iter)},
                         {"init_nodes", metricJson(s.init_nodes)},
                         {"init_time_s", metricJson(s.init_time_s)},
                         {"init_cost", metricJson(s.init_cost)},
                         {"opt_iter", metricJson(s.opt_iter)},
                         {"opt_nodes", metricJson(s.opt_nodes)},
                         {"opt_time_s", metricJson(s.opt_time_s)}});
  }
  nlohmann::json config = report.config_json.empty() ? nlohmann::json::object()
                                                     : nlohmann::json::parse(report.config_json);
  nlohmann::json doc{{"config", std::move(config)}, {"summaries", std::move(summaries)}, {"records", std::move(records)}};
  return doc.dump(2);
}

SuiteReport parseReportJson(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    SuiteReport report;
    const auto& config = doc.at("config");
    report.config_json = config.empty() ? std::string{} : config.dump();
    for (const auto& s : doc.at("summaries")) {
      PlannerSummary p;
      p.planner = s.at("planner").get<std::string>();
      p.trials = s.at("trials").get<std::size_t>();
      p.successes = s.at("successes").get<std::size_t>();
      p.init_iter = metricFrom(s.at("init_iter"));
      p.init_nodes = metricFrom(s.at("init_nodes"));
      p.init_time_s = metricFrom(s.at("init_time_s"));
      p.init_cost = metricFrom(s.at("init_cost"));
      p.opt_iter = metricFrom(s.at("opt_iter"));
      p.opt_nodes = metricFrom(s.at("opt_nodes"));
      p.opt_time_s = metricFrom(s.at("opt_time_s"));
      report.summaries.push_back(std::move(p));
    }
    for (const auto& r : doc.at("records")) {
      TrialRecord rec;
      rec.planner = r.at("planner").get<std::string>();
      rec.map_id = r.at("map_id").get<std::string>();
      rec.seed = r.at("seed").get<std::uint64_t>();
      rec.init_iter = optFrom<std::size_t>(r, "init_iter");
      rec.init_nodes = optFrom<std::size_t>(r, "init_nodes");
      rec.init_time_s = optFrom<double>(r, "init_time_s");
      rec.init_cost = optFrom<double>(r, "init_cost");
      rec.opt_iter = optFrom<std::size_t>(r, "opt_iter");
      rec.opt_nodes = optFrom<std::size_t>(r, "opt_nodes");
      rec.opt_time_s = optFrom<double>(r, "opt_time_s");
      rec.success = r.at("success").get<bool>();
      rec.error = r.value("error", std::string{});
      report.records.push_back(std::move(rec));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("report json: ") + e.what());
  }
}

}  // namespace pierguard
