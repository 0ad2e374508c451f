#include "explore_bench/mission.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>

namespace explore {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// A* from the robot position. When the robot stands inside the inflation band,
// planning starts at the nearest traversable cell and the robot position is prepended.
std::optional<Path> plan_from(const CostMask& mask, WorldPoint position, WorldPoint goal, double search_radius) {
  const GridGeometry& g = mask.geometry();
  if (mask.traversable(position)) return plan_astar(mask, position, goal);
  const GridCell rc = g.cell_of(position);
  const int reach = static_cast<int>(std::ceil(search_radius / g.resolution()));
  std::optional<GridCell> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (int dr = -reach; dr <= reach; ++dr) {
    for (int dc = -reach; dc <= reach; ++dc) {
      const GridCell c{rc.row + dr, rc.col + dc};
      if (!mask.traversable(c)) continue;
      const double d = distance(g.center_of(c), position);
      if (d < best_d || (d == best_d && c < *best)) {
        best_d = d;
        best = c;
      }
    }
  }
  if (!best || best_d > search_radius) return std::nullopt;
  std::optional<Path> path = plan_astar(mask, g.center_of(*best), goal);
  if (path) path->waypoints.insert(path->waypoints.begin(), position);
  return path;
}

bool path_blocked(const CostMask& mask, const Path& path) {
  // The first waypoint is the robot itself, which may sit in the inflation band.
  for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
    if (!mask.traversable(path.waypoints[i])) return true;
  }
  return false;
}

double brake(double value, double decel, double dt) {
  const double mag = std::max(0.0, std::abs(value) - decel * dt);
  return std::copysign(mag, value);
}

}  // namespace

MissionOutput run_mission(const GroundTruthMap& map, WorldPoint entry, StrategyKind strategy, std::uint64_t seed,
                          const MissionConfig& config) {
  MissionOutput out;
  MissionResult& r = out.result;
  r.environment = map.name();
  r.strategy = std::string(strategy_name(strategy));
  r.entry = entry;
  r.seed = seed;

  const double dt = config.dt;
  const auto max_steps = static_cast<std::size_t>(std::llround(config.time_cap_min * 60.0 / dt));
  std::mt19937_64 sensor_rng(splitmix64(seed));

  BeliefMap belief(map.geometry(), config.mapping);
  BatteryState battery(config.battery);
  if (config.initial_battery_percent < 100.0) battery.set_level_percent(config.initial_battery_percent);

  RobotState state;
  state.position = entry;
  state.heading = config.initial_heading;
  ComputeLoadMeter meter;

  auto push_sample = [&](double t, double current, std::uint64_t ops, double clearance, bool recovery) {
    TraceSample s;
    s.time = t;
    s.state = state;
    s.current = current;
    s.voltage = battery.voltage();
    s.discharged_ah = battery.discharged_ah();
    s.level_percent = battery.level_percent();
    s.compute_ops = ops;
    s.explored_area = belief.explored_area();
    s.truth_clearance = clearance;
    s.recovery = recovery;
    r.trajectory.push_back(s);
  };
  auto finish = [&](MissionStatus status, std::string detail) {
    r.status = status;
    r.detail = std::move(detail);
  };

  const double start_clearance = distance_to_nearest_obstacle(map, state.position, 1.0);
  r.min_truth_clearance = start_clearance;
  push_sample(0.0, 0.0, 0, start_clearance, false);

  bool done = false;
  if (!map.is_free(entry) || start_clearance < config.body_radius) {
    finish(MissionStatus::FailedToStart, "entry point is not clear");
    done = true;
  }

  try {
    StrategyParams strategy_params = config.strategy;
    strategy_params.traversal_clearance = config.plan_inflation;
    std::unique_ptr<ExplorationStrategy> strat =
        make_strategy(strategy, strategy_params, map.geometry(), entry, splitmix64(seed + 1));
    InflatedCostmap costmap(belief, config.plan_inflation);

    std::optional<WorldPoint> goal;
    Path path;
    double goal_time = 0.0;
    double plan_time = 0.0;
    double next_decision_time = 0.0;
    double next_snapshot = config.snapshot_period;
    WorldPoint failing_goal{};
    bool failing_active = false;
    int failures = 0;
    std::vector<WorldPoint> excluded;  // blacklisted and visited goals

    for (std::size_t k = 0; !done; ++k) {
      const double t = static_cast<double>(k) * dt;

      const LidarScan scan = simulate_scan(map, state, config.lidar, sensor_rng);
      const ScanUpdate update = belief.integrate_scan(scan);
      meter.add(update.cells_touched);
      costmap.apply(belief, update);
      strat->on_step(belief, state, meter);

      if (goal && distance(state.position, *goal) <= config.goal_tolerance) {
        // Reached goals are not offered again; a frontier that survives its visit
        // would otherwise pin the robot in place.
        excluded.push_back(*goal);
        goal.reset();
        path = Path{};
        next_decision_time = t;
      }
      const bool decide_now = goal ? (t - goal_time >= config.decision_period - 1e-9)
                                   : (t >= next_decision_time - 1e-9);
      if (decide_now) {
        const StrategyDecision decision = strat->decide(belief, state, excluded, meter);
        ++r.decisions;
        if (decision.kind == StrategyDecision::Kind::Complete) {
          finish(MissionStatus::Complete, decision.reason);
          break;
        }
        if (decision.kind == StrategyDecision::Kind::FailedToStart) {
          finish(MissionStatus::FailedToStart, decision.reason);
          break;
        }
        if (decision.kind == StrategyDecision::Kind::NoPathableGoal) {
          goal.reset();
          path = Path{};
          next_decision_time = t + config.idle_retry_period;
        } else if (distance(state.position, decision.goal) <= config.goal_tolerance) {
          excluded.push_back(decision.goal);
          goal.reset();
          path = Path{};
          next_decision_time = t + dt;
        } else {
          if (!goal || distance(*goal, decision.goal) > 1e-9) path = Path{};
          goal = decision.goal;
          goal_time = t;
        }
      }

      if (goal && (path.empty() || t - plan_time >= config.replan_period - 1e-9 ||
                   path_blocked(costmap.mask(), path))) {
        std::optional<Path> planned = plan_from(costmap.mask(), state.position, *goal, 0.6);
        if (planned) {
          path = std::move(*planned);
          plan_time = t;
          failing_active = false;
          failures = 0;
        } else {
          if (failing_active && distance(failing_goal, *goal) <= config.strategy.blacklist_radius) {
            ++failures;
          } else {
            failing_goal = *goal;
            failing_active = true;
            failures = 1;
          }
          if (failures >= config.blacklist_after_failures) {
            excluded.push_back(*goal);
            ++r.blacklisted_goals;
            failing_active = false;
            failures = 0;
          }
          goal.reset();
          path = Path{};
          next_decision_time = t + dt;
        }
      }

      RobotState next;
      bool recovery = false;
      if (goal && !path.empty()) {
        const DwaResult step = dwa_step(state, path, belief, dt, config.dwa, config.limits);
        next = step.next;
        recovery = step.command.recovery;
      } else {
        next = integrate_unicycle(state, brake(state.linear_velocity, config.limits.linear_acceleration, dt),
                                  brake(state.angular_velocity, config.limits.angular_acceleration, dt), dt);
      }

      const std::uint64_t ops = meter.take_delta();
      const double current = draw_current(config.battery, next, ops, dt);
      battery.discharge(current, dt);
      state = next;
      r.steps = k + 1;

      const double clearance = distance_to_nearest_obstacle(map, state.position, 1.0);
      r.min_truth_clearance = std::min(r.min_truth_clearance, clearance);
      if (!within_limits(state, config.limits)) ++r.limit_violations;
      push_sample(static_cast<double>(r.steps) * dt, current, ops, clearance, recovery);

      if (config.snapshot_period > 0.0 && static_cast<double>(r.steps) * dt >= next_snapshot - 1e-9) {
        out.snapshots.push_back({static_cast<double>(r.steps) * dt, belief_to_pgm(belief)});
        next_snapshot += config.snapshot_period;
      }

      if (clearance < config.body_radius) {
        finish(MissionStatus::CollisionAbort,
               fmt::format("contact at ({:.3f}, {:.3f})", state.position.x, state.position.y));
        break;
      }
      if (failsafe_triggered(battery)) {
        finish(MissionStatus::BatteryFailsafe, "battery at fail-safe level");
        break;
      }
      if (r.steps >= max_steps) {
        finish(MissionStatus::TimeCap, "simulated time cap reached");
        break;
      }
    }
  } catch (const std::exception& e) {
    finish(MissionStatus::StrategyTerminated, e.what());
  }

  r.sim_time = static_cast<double>(r.steps) * dt;
  r.compute_ops = meter.total();
  r.belief_final = std::move(belief);
  r.battery_final = battery;
  out.snapshots.push_back({r.sim_time, belief_to_pgm(r.belief_final)});
  return out;
}

}  // namespace explore
