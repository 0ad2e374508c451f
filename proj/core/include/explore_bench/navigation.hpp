#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "explore_bench/geometry.hpp"
#include "explore_bench/mapping.hpp"
#include "explore_bench/robot_state.hpp"

namespace explore {

/// Velocity and acceleration bounds of the airframe. min_recovery_turn_rate is the smallest turn-rate magnitude
/// commanded during in-place recovery rotations.
struct KinematicLimits {
  double min_linear_velocity = -0.1;  // m/s
  double max_linear_velocity = 0.5;   // m/s
  double max_angular_velocity = 0.5;  // rad/s
  double min_recovery_turn_rate = 0.2;  // rad/s
  double linear_acceleration = 0.5;   // m/s^2
  double angular_acceleration = 1.0;  // rad/s^2
};

bool within_limits(const RobotState& s, const KinematicLimits& limits, double tolerance = 1e-12);

/// Planning traversability. Unknown cells and cells within the inflation radius
/// of a believed-occupied cell are blocked.
class CostMask {
 public:
  CostMask() = default;
  explicit CostMask(GridGeometry geometry) : geometry_(geometry), blocked_(geometry.cell_count(), 1) {}

  const GridGeometry& geometry() const { return geometry_; }
  bool traversable(GridCell c) const { return geometry_.in_bounds(c) && !blocked_[geometry_.index_of(c)]; }
  bool traversable(std::size_t index) const { return !blocked_[index]; }
  bool traversable(WorldPoint p) const { return traversable(geometry_.cell_of(p)); }
  void set_blocked(std::size_t index, bool blocked) { blocked_[index] = blocked ? 1 : 0; }
  std::span<const std::uint8_t> blocked() const { return blocked_; }

  bool operator==(const CostMask&) const = default;

 private:
  GridGeometry geometry_;
  std::vector<std::uint8_t> blocked_;
};

/// Cell offsets whose center lies within `radius` of the origin cell's center.
std::vector<GridCell> disk_offsets(double radius, double resolution);

CostMask inflate(const BeliefMap& belief, double radius);

/// Same mask as inflate(), maintained incrementally from scan updates.
class InflatedCostmap {
 public:
  InflatedCostmap(const BeliefMap& belief, double radius);

  void apply(const BeliefMap& belief, const ScanUpdate& update);
  const CostMask& mask() const { return mask_; }
  double radius() const { return radius_; }

 private:
  void refresh(const BeliefMap& belief, std::size_t index);

  double radius_;
  std::vector<GridCell> offsets_;
  std::vector<std::uint16_t> occupied_near_;
  CostMask mask_;
};

struct Path {
  std::vector<WorldPoint> waypoints;

  bool empty() const { return waypoints.empty(); }
  std::vector<double> segment_lengths() const;
  double length() const;
};

struct PlanStats {
  std::size_t expansions = 0;
  /// Cost in moves: cost = (cardinal + diagonal * sqrt(2)) * resolution.
  std::int64_t cardinal_moves = 0;
  std::int64_t diagonal_moves = 0;
};

/// Grid move cost; computed from integer move counts so equal-cost paths agree bit for bit.
double grid_path_cost(std::int64_t cardinal, std::int64_t diagonal, double resolution);

/// 8-connected A* with the octile heuristic. Diagonal moves may not cut a blocked corner.
/// Returns nullopt if the start or goal is blocked or the goal is unreachable.
std::optional<Path> plan_astar(const CostMask& mask, WorldPoint start, WorldPoint goal,
                               PlanStats* stats = nullptr);

/// Σ Euclidean distances between consecutive positions.
double distance_travelled(std::span<const RobotState> trajectory);

/// Exact unicycle integration of constant (v, w) over dt.
RobotState integrate_unicycle(const RobotState& s, double v, double w, double dt);

}  // namespace explore
