#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "explore_bench/battery.hpp"
#include "explore_bench/envmap.hpp"
#include "explore_bench/mapping.hpp"
#include "explore_bench/robot_state.hpp"

namespace explore {

enum class MissionStatus {
  Complete,
  BatteryFailsafe,
  StrategyTerminated,
  FailedToStart,
  CollisionAbort,
  TimeCap,
};

std::string_view status_name(MissionStatus status);

/// One logged control step.
struct TraceSample {
  double time = 0.0;  // s
  RobotState state;
  double current = 0.0;        // A drawn during the step that ended here
  double voltage = 0.0;        // V
  double discharged_ah = 0.0;  // Ah since start
  double level_percent = 100.0;
  std::uint64_t compute_ops = 0;  // ops charged during the step
  double explored_area = 0.0;     // m^2 of known cells
  double truth_clearance = 0.0;   // m from the ground-truth obstacles
  bool recovery = false;
};

struct MissionResult {
  std::string environment;
  std::string strategy;
  WorldPoint entry{};
  std::uint64_t seed = 0;
  MissionStatus status = MissionStatus::StrategyTerminated;
  std::string detail;
  std::vector<TraceSample> trajectory;  // sample 0 is the start pose at t = 0
  BeliefMap belief_final;
  BatteryState battery_final;
  double sim_time = 0.0;  // s, steps * dt
  std::size_t steps = 0;
  std::size_t decisions = 0;
  std::size_t blacklisted_goals = 0;
  std::uint64_t compute_ops = 0;
  double min_truth_clearance = 0.0;
  std::size_t limit_violations = 0;
};

struct KpiReport {
  double ec = 0.0;       // m
  double tt = 0.0;       // min
  double ef = 0.0;       // m^2 / m
  double bl = 0.0;       // percent
  double mc = 0.0;       // fraction
  double mc_free = 0.0;  // free cells only
  double ae = 0.0;       // m^2
  bool success = false;
  /// Area was explored without any travel, so Ef is undefined and reported as 0.
  bool ef_undefined = false;
};

/// Σ distances between consecutive logged positions.
double path_length(std::span<const TraceSample> trajectory);

KpiReport compute_kpis(const MissionResult& result, const GroundTruthMap& truth,
                       double mc_success_threshold = 0.97);

struct KpiStat {
  double mean = 0.0;
  double stddev = 0.0;  // n - 1 denominator; 0 for a single sample
};

/// Mean and sample standard deviation; the result does not depend on input order.
KpiStat summarize(std::span<const double> values);

struct AggregateRow {
  std::size_t runs = 0;
  std::size_t successes = 0;
  KpiStat ec, tt, ef, bl, mc, mc_free;

  /// "k/n".
  std::string ms() const;
};

/// Throws std::invalid_argument on an empty list.
AggregateRow aggregate(std::span<const KpiReport> reports);

}  // namespace explore
