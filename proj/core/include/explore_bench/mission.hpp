#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "explore_bench/battery.hpp"
#include "explore_bench/dwa.hpp"
#include "explore_bench/envmap.hpp"
#include "explore_bench/kpi.hpp"
#include "explore_bench/mapping.hpp"
#include "explore_bench/navigation.hpp"
#include "explore_bench/sensing.hpp"
#include "explore_bench/strategies.hpp"

namespace explore {

/// Every tunable of a single mission.
struct MissionConfig {
  double dt = 0.1;                   // s per control step
  double time_cap_min = 40.0;        // simulated minutes
  double decision_period = 10.0;     // s before a goal is re-decided
  double idle_retry_period = 1.0;    // s between decisions while no goal is available
  double replan_period = 2.0;        // s between A* replans toward the same goal
  double goal_tolerance = 0.3;       // m
  int blacklist_after_failures = 3;  // consecutive plan failures
  double plan_inflation = 0.40;      // m, obstacle inflation for A*
  double body_radius = 0.15;         // m, ground-truth contact counts as a collision
  double initial_heading = 0.0;      // rad
  double initial_battery_percent = 100.0;
  double snapshot_period = 0.0;      // s between belief snapshots; 0 keeps only the final map

  LidarParams lidar;
  MappingParams mapping;
  StrategyParams strategy;
  DwaParams dwa;
  KinematicLimits limits;
  BatteryParams battery;
  double mc_success_threshold = 0.97;
};

struct BeliefSnapshot {
  double time = 0.0;
  std::string pgm;
};

struct MissionOutput {
  MissionResult result;
  std::vector<BeliefSnapshot> snapshots;
};

/// Runs one closed-loop mission: scan, map, decide, plan, drive and drain the
/// battery each step until a terminal condition. Deterministic in (map, entry,
/// strategy, seed, config). Errors inside the loop end the mission with a
/// status; they never escape.
MissionOutput run_mission(const GroundTruthMap& map, WorldPoint entry, StrategyKind strategy, std::uint64_t seed,
                          const MissionConfig& config = {});

}  // namespace explore
