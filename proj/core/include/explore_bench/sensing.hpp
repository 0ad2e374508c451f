#pragma once

#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "explore_bench/envmap.hpp"
#include "explore_bench/robot_state.hpp"

namespace explore {

struct LidarParams {
  double field_of_view = 270.0 * std::numbers::pi / 180.0;
  double angular_resolution = 0.25 * std::numbers::pi / 180.0;
  double range_max = 8.0;
  double noise_stddev = 0.0;  // m, Gaussian range noise; 0 disables
};

/// One planar sweep. Beam i points at pose.heading + angle_min + i * angular_resolution.
/// Beams without a return report exactly range_max.
struct LidarScan {
  RobotState pose;
  double angle_min = 0.0;
  double angle_max = 0.0;
  double angular_resolution = 0.0;
  double range_max = 0.0;
  std::vector<double> ranges;

  double beam_angle(std::size_t i) const {
    return pose.heading + angle_min + static_cast<double>(i) * angular_resolution;
  }
  bool is_return(std::size_t i) const { return ranges[i] < range_max; }
};

std::size_t beam_count(const LidarParams& params);

class PoseInObstacleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raycasts every beam against the ground truth: range is the distance to the
/// entry point of the first occupied cell, clamped to range_max, then optionally
/// perturbed by noise and re-clamped to (0, range_max].
LidarScan simulate_scan(const GroundTruthMap& map, const RobotState& pose, const LidarParams& params,
                        std::mt19937_64& rng);

/// Range of a single ray (no noise).
double cast_ray(const GroundTruthMap& map, WorldPoint from, double angle, double range_max);

}  // namespace explore
