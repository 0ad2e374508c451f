#include "explore_bench/dwa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "explore_bench/distance_field.hpp"

namespace explore {
namespace {

std::vector<double> sample_range(double lo, double hi, int n, double must_include) {
  std::vector<double> out;
  if (n <= 1 || hi - lo < 1e-12) {
    out.push_back(std::clamp(must_include, lo, hi));
    if (hi - lo >= 1e-12) out.push_back(hi);
  } else {
    for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
    if (must_include >= lo && must_include <= hi) {
      for (double& x : out) {
        if (std::abs(x - must_include) < 1e-12) x = must_include;
      }
      out.push_back(must_include);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
            out.end());
  return out;
}

}  // namespace

WorldPoint carrot_on_path(const Path& path, WorldPoint position, double lookahead) {
  if (path.waypoints.empty()) throw std::invalid_argument("carrot_on_path: empty path");
  std::size_t nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < path.waypoints.size(); ++i) {
    const double d = distance(path.waypoints[i], position);
    if (d < best) {
      best = d;
      nearest = i;
    }
  }
  double remaining = lookahead;
  for (std::size_t i = nearest; i + 1 < path.waypoints.size(); ++i) {
    const double seg = distance(path.waypoints[i], path.waypoints[i + 1]);
    if (seg >= remaining) {
      const double t = remaining / seg;
      return {path.waypoints[i].x + t * (path.waypoints[i + 1].x - path.waypoints[i].x),
              path.waypoints[i].y + t * (path.waypoints[i + 1].y - path.waypoints[i].y)};
    }
    remaining -= seg;
  }
  return path.waypoints.back();
}

WorldPoint visible_carrot(const Path& path, WorldPoint position, const BeliefMap& belief, const DwaParams& params) {
  const double res = belief.geometry().resolution();
  const LocalClearance clearance(belief, position, params.lookahead + res, params.collision_radius);
  const double floor = std::min(params.collision_radius, clearance.at(position));
  const auto segment_clear = [&](WorldPoint target) {
    const double len = distance(position, target);
    const int n = std::max(1, static_cast<int>(std::ceil(len / (res / 2.0))));
    for (int k = 1; k <= n; ++k) {
      const double t = static_cast<double>(k) / n;
      const WorldPoint p{position.x + t * (target.x - position.x), position.y + t * (target.y - position.y)};
      if (belief.classify(p) != CellClass::Free || clearance.at(p) < floor - 1e-12) return false;
    }
    return true;
  };
  WorldPoint carrot = carrot_on_path(path, position, params.lookahead);
  for (double l = params.lookahead; l > res && !segment_clear(carrot); l -= res) {
    carrot = carrot_on_path(path, position, l - res);
  }
  return carrot;
}

LocalClearance::LocalClearance(const BeliefMap& belief, WorldPoint center, double radius, double cap)
    : belief_(belief), cap_(cap) {
  const GridGeometry& g = belief.geometry();
  const int reach = static_cast<int>(std::ceil((radius + cap) / g.resolution())) + 1;
  const GridCell c = g.cell_of(center);
  r0_ = std::max(0, c.row - reach);
  c0_ = std::max(0, c.col - reach);
  const int r1 = std::min(g.height() - 1, c.row + reach);
  const int c1 = std::min(g.width() - 1, c.col + reach);
  rows_ = std::max(0, r1 - r0_ + 1);
  cols_ = std::max(0, c1 - c0_ + 1);
  std::vector<std::uint8_t> occ(static_cast<std::size_t>(rows_) * cols_, 0);
  for (int r = 0; r < rows_; ++r) {
    for (int cc = 0; cc < cols_; ++cc) {
      occ[static_cast<std::size_t>(r) * cols_ + cc] =
          belief.classify(GridCell{r0_ + r, c0_ + cc}) == CellClass::Occupied;
    }
  }
  dist_ = euclidean_distance_transform(cols_, rows_, occ);
}

double LocalClearance::at(WorldPoint p) const {
  const GridGeometry& g = belief_.geometry();
  const GridCell c = g.cell_of(p);
  const int r = c.row - r0_;
  const int cc = c.col - c0_;
  if (r < 0 || cc < 0 || r >= rows_ || cc >= cols_) return 0.0;
  const double d = dist_[static_cast<std::size_t>(r) * cols_ + cc] * g.resolution() - g.resolution() / 2.0;
  return std::clamp(d, 0.0, cap_);
}

std::vector<TrajectoryScore> dwa_evaluate(const RobotState& state, WorldPoint carrot, const BeliefMap& belief,
                                          double dt, const DwaParams& params, const KinematicLimits& limits) {
  if (!(dt > 0.0)) throw std::invalid_argument("dwa: dt must be positive");
  const double v_lo = std::max(limits.min_linear_velocity, state.linear_velocity - limits.linear_acceleration * dt);
  const double v_hi = std::min(limits.max_linear_velocity, state.linear_velocity + limits.linear_acceleration * dt);
  const double w_lo =
      std::max(-limits.max_angular_velocity, state.angular_velocity - limits.angular_acceleration * dt);
  const double w_hi =
      std::min(limits.max_angular_velocity, state.angular_velocity + limits.angular_acceleration * dt);

  // Velocities outside the limits (after a recovery) collapse onto the nearest bound.
  const auto vs = sample_range(std::min(v_lo, v_hi), std::max(v_lo, v_hi), params.linear_samples, 0.0);
  const auto ws = sample_range(std::min(w_lo, w_hi), std::max(w_lo, w_hi), params.angular_samples, 0.0);

  const double travel = std::max(std::abs(limits.max_linear_velocity), std::abs(limits.min_linear_velocity)) *
                        params.horizon;
  const LocalClearance clearance(belief, state.position, travel + belief.geometry().resolution(),
                                 std::max(params.clearance_cap, params.collision_radius));
  const double start_clearance = clearance.at(state.position);
  const double floor = std::min(params.collision_radius, start_clearance);
  const int steps = std::max(1, static_cast<int>(std::lround(params.horizon / params.sim_step)));

  std::vector<TrajectoryScore> out;
  out.reserve(vs.size() * ws.size());
  for (double v : vs) {
    for (double w : ws) {
      TrajectoryScore s;
      s.linear = v;
      s.angular = w;
      s.admissible = true;
      double min_clear = std::min(start_clearance, params.clearance_cap);
      RobotState sim = state;
      for (int k = 0; k < steps; ++k) {
        sim = integrate_unicycle(sim, v, w, params.sim_step);
        if (belief.classify(sim.position) != CellClass::Free) {
          s.admissible = false;
          break;
        }
        const double c = clearance.at(sim.position);
        if (c < floor - 1e-12) {
          s.admissible = false;
          break;
        }
        min_clear = std::min(min_clear, c);
      }
      if (s.admissible) {
        const double dx = carrot.x - sim.position.x;
        const double dy = carrot.y - sim.position.y;
        double heading_err = 0.0;
        if (std::hypot(dx, dy) > 1e-6) heading_err = std::abs(normalize_angle(std::atan2(dy, dx) - sim.heading));
        s.heading = 1.0 - heading_err / std::numbers::pi;
        s.clearance = params.clearance_cap > 0.0 ? std::clamp(min_clear / params.clearance_cap, 0.0, 1.0) : 0.0;
        s.velocity = v / limits.max_linear_velocity;
        s.total = params.heading_weight * s.heading + params.clearance_weight * s.clearance +
                  params.velocity_weight * s.velocity;
      }
      out.push_back(s);
    }
  }
  return out;
}

DwaResult dwa_step(const RobotState& state, const Path& path, const BeliefMap& belief, double dt,
                   const DwaParams& params, const KinematicLimits& limits) {
  if (path.empty()) throw std::invalid_argument("dwa: path must not be empty");
  DwaResult result;
  result.carrot = visible_carrot(path, state.position, belief, params);
  const auto scores = dwa_evaluate(state, result.carrot, belief, dt, params, limits);

  // Standing still is only chosen when nothing else is admissible; near a corner it
  // can outscore every turn-away arc and would hold the robot in place indefinitely.
  const TrajectoryScore* best = nullptr;
  const TrajectoryScore* still = nullptr;
  for (const TrajectoryScore& s : scores) {
    if (!s.admissible) continue;
    if (s.linear == 0.0 && s.angular == 0.0) {
      still = &s;
      continue;
    }
    if (!best || s.total > best->total + 1e-12) best = &s;
  }
  if (!best) best = still;
  if (best) {
    result.command = {best->linear, best->angular, false};
  } else {
    const double bearing = std::atan2(result.carrot.y - state.position.y, result.carrot.x - state.position.x);
    const double err = normalize_angle(bearing - state.heading);
    const double rate = std::clamp(std::abs(err), limits.min_recovery_turn_rate, limits.max_angular_velocity);
    result.command = {0.0, err >= 0.0 ? rate : -rate, true};
  }
  result.next = integrate_unicycle(state, result.command.linear, result.command.angular, dt);
  return result;
}

}  // namespace explore
