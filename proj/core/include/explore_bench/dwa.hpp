#pragma once

#include <vector>

#include "explore_bench/mapping.hpp"
#include "explore_bench/navigation.hpp"

namespace explore {

struct DwaParams {
  double horizon = 1.5;    // s of forward simulation per candidate
  double sim_step = 0.1;   // s between collision checks along a candidate
  double heading_weight = 0.8;
  double clearance_weight = 0.2;
  double velocity_weight = 0.2;
  int linear_samples = 11;
  int angular_samples = 21;
  double collision_radius = 0.26;  // m, robot clearance
  double clearance_cap = 1.0;      // m, clearance beyond this scores the same
  double lookahead = 0.8;          // m along the global path
};

struct VelocityCommand {
  double linear = 0.0;
  double angular = 0.0;
  bool recovery = false;
};

struct TrajectoryScore {
  double linear = 0.0;
  double angular = 0.0;
  bool admissible = false;
  double heading = 0.0;    // in [0, 1]
  double clearance = 0.0;  // in [0, 1]
  double velocity = 0.0;   // v / v_max
  double total = 0.0;
};

struct DwaResult {
  VelocityCommand command;
  RobotState next;
  WorldPoint carrot{};
};

/// Point `lookahead` meters along the path past the waypoint nearest `position`.
WorldPoint carrot_on_path(const Path& path, WorldPoint position, double lookahead);

/// Carrot used by dwa_step: the lookahead point, pulled back along the path until the
/// straight segment from `position` keeps the collision radius in the belief map.
WorldPoint visible_carrot(const Path& path, WorldPoint position, const BeliefMap& belief, const DwaParams& params);

/// Clearance lookup around a pose: distance from a point's cell to the nearest
/// believed-occupied cell boundary, capped.
class LocalClearance {
 public:
  LocalClearance(const BeliefMap& belief, WorldPoint center, double radius, double cap);
  double at(WorldPoint p) const;

 private:
  const BeliefMap& belief_;
  int r0_ = 0;
  int c0_ = 0;
  int rows_ = 0;
  int cols_ = 0;
  double cap_;
  std::vector<double> dist_;
};

/// Scores every sampled (v, w) in the dynamic window around the current velocity.
std::vector<TrajectoryScore> dwa_evaluate(const RobotState& state, WorldPoint carrot, const BeliefMap& belief,
                                          double dt, const DwaParams& params, const KinematicLimits& limits);

/// One control step: picks the best admissible candidate (or an in-place recovery
/// turn if none is admissible) and advances the unicycle by dt. The stand-still
/// candidate (0, 0) is picked only when it is the sole admissible one.
DwaResult dwa_step(const RobotState& state, const Path& path, const BeliefMap& belief, double dt,
                   const DwaParams& params = {}, const KinematicLimits& limits = {});

}  // namespace explore
