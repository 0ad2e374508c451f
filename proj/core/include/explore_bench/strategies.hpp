#pragma once

#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "explore_bench/compute_meter.hpp"
#include "explore_bench/frontiers.hpp"
#include "explore_bench/mapping.hpp"
#include "explore_bench/robot_state.hpp"

namespace explore {

enum class StrategyKind { Wfd, Lite, Rrt };

std::optional<StrategyKind> parse_strategy(std::string_view name);
std::string_view strategy_name(StrategyKind kind);

struct StrategyDecision {
  enum class Kind { Goal, Complete, NoPathableGoal, FailedToStart };

  Kind kind = Kind::Complete;
  WorldPoint goal{};
  std::string reason;

  static StrategyDecision make_goal(WorldPoint p, std::string reason) { return {Kind::Goal, p, std::move(reason)}; }
  static StrategyDecision complete(std::string reason = "no frontier") { return {Kind::Complete, {}, std::move(reason)}; }
  static StrategyDecision no_pathable_goal(std::string reason) { return {Kind::NoPathableGoal, {}, std::move(reason)}; }
  static StrategyDecision failed_to_start(std::string reason) { return {Kind::FailedToStart, {}, std::move(reason)}; }

  bool is_goal() const { return kind == Kind::Goal; }
};

struct LiteParams {
  double gain_weight = 1.0;
  double distance_weight = 0.33;
};

struct RrtParams {
  double eta = 1.0;              // m, tree growth step
  double revenue_lambda = 3.0;   // weight of information gain in m^2
  int idle_decisions = 20;       // consecutive empty decisions before giving up
  double cluster_cutoff = 0.5;   // m
  double info_radius = 8.0;      // m, sensor radius for information gain
  int iterations_per_step = 10;  // detector iterations per tree per control step
  double goal_snap_radius = 1.5; // m, search for a reachable free goal around a cluster
  std::size_t max_candidates = 4000;
  double hysteresis_radius = 3.0;  // m; clusters this close to the robot get their gain scaled
  double hysteresis_gain = 2.0;
};

struct StrategyParams {
  double goal_obstacle_radius = 1.0;  // m
  double blacklist_radius = 0.5;      // m
  /// Planner inflation radius; RRT only snaps goals the planner can reach.
  double traversal_clearance = 0.40;  // m
  FrontierParams frontier;
  LiteParams lite;
  RrtParams rrt;
};

class StrategyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No believed-occupied cell center within `radius` of p (brute-force window).
bool goal_clearance_ok(const BeliefMap& belief, WorldPoint p, double radius);
bool is_blacklisted(WorldPoint p, std::span<const WorldPoint> blacklist, double radius);

/// BFS hop counts from the robot cell through known-free cells; -1 where unreached.
std::vector<std::int32_t> free_space_depth(const BeliefMap& belief, GridCell robot_cell, Connectivity conn,
                                           ComputeLoadMeter* meter = nullptr);

/// Nearest frontier (by BFS distance through known-free space) whose median cell
/// keeps the goal clearance; Complete when none remains.
StrategyDecision wfd_next_goal(const BeliefMap& belief, const RobotState& robot, ComputeLoadMeter& meter,
                               const StrategyParams& params = {}, std::span<const WorldPoint> blacklist = {});

struct LiteCandidate {
  WorldPoint centroid{};
  WorldPoint goal{};
  double size_m = 0.0;
  double path_distance = 0.0;
};

/// gain_weight * size - distance_weight * path_distance.
double frontier_weight(double size_m, double path_distance, const LiteParams& params);

/// Highest weight; ties go to the shorter path, then the lexicographically smaller centroid.
std::optional<std::size_t> pick_lightweight(std::span<const LiteCandidate> candidates, const LiteParams& params);

StrategyDecision lightweight_next_goal(const BeliefMap& belief, const RobotState& robot,
                                       std::span<const WorldPoint> blacklist, ComputeLoadMeter& meter,
                                       const StrategyParams& params = {});

/// Mission-local strategy state behind one interface.
class ExplorationStrategy {
 public:
  virtual ~ExplorationStrategy() = default;
  virtual StrategyKind kind() const = 0;
  /// Called once per control step after the map update.
  virtual void on_step(const BeliefMap& /*belief*/, const RobotState& /*robot*/, ComputeLoadMeter& /*meter*/) {}
  virtual StrategyDecision decide(const BeliefMap& belief, const RobotState& robot,
                                  std::span<const WorldPoint> blacklist, ComputeLoadMeter& meter) = 0;
};

std::unique_ptr<ExplorationStrategy> make_strategy(StrategyKind kind, const StrategyParams& params,
                                                   const GridGeometry& geometry, WorldPoint entry,
                                                   std::uint64_t seed);

}  // namespace explore
