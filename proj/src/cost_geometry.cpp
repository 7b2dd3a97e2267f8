#include "pierguard/cost_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace pierguard {

void CostParams::validate() const {
  if (!(beta1 > 0.0)) throw std::invalid_argument("beta1 must be positive");
  if (!(beta2 >= 0.0)) throw std::invalid_argument("beta2 must be nonnegative");
}

std::optional<Vec3> unitDirection(const Vec3& from, const Vec3& to) {
  const Vec3 d = to - from;
  const double n = d.norm();
  if (n == 0.0) return std::nullopt;
  return d / n;
}

double edgeCost(const CostParams& params, const DirectedState& from, const Vec3& to) {
  const Vec3 d = to - from.position;
  const double len = d.norm();
  double cost = params.beta1 * len;
  if (params.beta2 != 0.0 && from.incoming_dir && len > 0.0) {
    const double c = std::clamp(from.incoming_dir->dot(d / len), -1.0, 1.0);
    cost += params.beta2 * std::acos(c);
  }
  return cost;
}

double pathCost(const CostParams& params, std::span<const Vec3> waypoints) {
  if (waypoints.size() < 2) throw std::invalid_argument("path needs at least two waypoints");
  double total = 0.0;
  DirectedState state{waypoints[0], std::nullopt};
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    total += edgeCost(params, state, waypoints[i]);
    // A zero-length segment keeps the previous heading.
    if (auto dir = unitDirection(state.position, waypoints[i])) state.incoming_dir = dir;
    state.position = waypoints[i];
  }
  return total;
}

double costToGo(const CostParams& params, const Vec3& p, const Vec3& goal) {
  return params.beta1 * distance(p, goal);
}

double unitBallVolume(int dimension) {
  const double m = dimension;
  return std::pow(std::numbers::pi, m / 2.0) / std::tgamma(m / 2.0 + 1.0);
}

double rrtStarGamma(int dimension, double free_measure, double epsilon) {
  const double m = dimension;
  return (1.0 + epsilon) * std::pow(2.0 * (1.0 + 1.0 / m), 1.0 / m) *
         std::pow(free_measure / unitBallVolume(dimension), 1.0 / m);
}

double rrtStarRadius(int dimension, double free_measure, std::size_t n, double step_cap) {
  if (n == 0) throw std::invalid_argument("vertex count must be >= 1");
  if (dimension < 2) throw std::invalid_argument("dimension must be >= 2");
  if (!(free_measure > 0.0)) throw std::invalid_argument("free measure must be positive");
  if (n == 1) return step_cap;
  const double nd = static_cast<double>(n);
  const double r = rrtStarGamma(dimension, free_measure) * std::pow(std::log(nd) / nd, 1.0 / dimension);
  return std::min(step_cap, r);
}

double hausdorffDistance(std::span<const Vec3> a, std::span<const Vec3> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff distance of an empty set");
  auto directed = [](std::span<const Vec3> from, std::span<const Vec3> to) {
    double worst = 0.0;
    for (const Vec3& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec3& q : to) {
        best = std::min(best, squaredDistance(p, q));
        if (best <= worst) break;  // cannot raise the running max
      }
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace pierguard
