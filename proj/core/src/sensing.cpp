#include "explore_bench/sensing.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "explore_bench/ray_traversal.hpp"

namespace explore {
namespace {

constexpr double kMinRange = 1e-6;
constexpr double kCornerEps = 1e-9;

}  // namespace

std::size_t beam_count(const LidarParams& params) {
  return static_cast<std::size_t>(std::floor(params.field_of_view / params.angular_resolution + 1e-9)) + 1;
}

double cast_ray(const GroundTruthMap& map, WorldPoint from, double angle, double range_max) {
  double range = range_max;
  const std::span<const Occupancy> cells = map.cells();
  const GridGeometry& g = map.geometry();
  traverse_ray(g, from, std::cos(angle), std::sin(angle), range_max,
               [&](GridCell c, double t_enter, double t_exit) {
                 if (t_exit - t_enter <= kCornerEps) return true;
                 if (cells[g.index_of(c)] == Occupancy::Occupied) {
                   range = std::max(t_enter, kMinRange);
                   return false;
                 }
                 return true;
               });
  return range;
}

LidarScan simulate_scan(const GroundTruthMap& map, const RobotState& pose, const LidarParams& params,
                        std::mt19937_64& rng) {
  if (!map.is_free(pose.position)) {
    throw PoseInObstacleError(
        fmt::format("scan pose ({}, {}) is not in free space", pose.position.x, pose.position.y));
  }
  LidarScan scan;
  scan.pose = pose;
  scan.angle_min = -params.field_of_view / 2.0;
  scan.angular_resolution = params.angular_resolution;
  scan.range_max = params.range_max;
  const std::size_t n = beam_count(params);
  scan.angle_max = scan.angle_min + static_cast<double>(n - 1) * params.angular_resolution;
  scan.ranges.resize(n);

  std::normal_distribution<double> noise(0.0, params.noise_stddev > 0.0 ? params.noise_stddev : 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    double r = cast_ray(map, pose.position, scan.beam_angle(i), params.range_max);
    // No-return beams stay coded as range_max.
    if (params.noise_stddev > 0.0 && r < params.range_max) {
      r = std::clamp(r + noise(rng), kMinRange, params.range_max);
    }
    scan.ranges[i] = r;
  }
  return scan;
}

}  // namespace explore
