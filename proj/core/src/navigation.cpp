#include "explore_bench/navigation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

namespace explore {

bool within_limits(const RobotState& s, const KinematicLimits& limits, double tolerance) {
  return s.linear_velocity >= limits.min_linear_velocity - tolerance &&
         s.linear_velocity <= limits.max_linear_velocity + tolerance &&
         std::abs(s.angular_velocity) <= limits.max_angular_velocity + tolerance;
}

std::vector<GridCell> disk_offsets(double radius, double resolution) {
  std::vector<GridCell> out;
  const int reach = static_cast<int>(std::floor(radius / resolution + 1e-9));
  const double r2 = (radius / resolution) * (radius / resolution) + 1e-9;
  for (int dr = -reach; dr <= reach; ++dr) {
    for (int dc = -reach; dc <= reach; ++dc) {
      if (static_cast<double>(dr * dr + dc * dc) <= r2) out.push_back({dr, dc});
    }
  }
  return out;
}

CostMask inflate(const BeliefMap& belief, double radius) {
  const GridGeometry& g = belief.geometry();
  CostMask mask(g);
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    mask.set_blocked(i, belief.classify(i) != CellClass::Free);
  }
  const auto offsets = disk_offsets(std::max(radius, 0.0), g.resolution());
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    if (belief.classify(i) != CellClass::Occupied) continue;
    const GridCell c = g.cell_at(i);
    for (const GridCell& o : offsets) {
      const GridCell n{c.row + o.row, c.col + o.col};
      if (g.in_bounds(n)) mask.set_blocked(g.index_of(n), true);
    }
  }
  return mask;
}

InflatedCostmap::InflatedCostmap(const BeliefMap& belief, double radius)
    : radius_(std::max(radius, 0.0)),
      offsets_(disk_offsets(radius_, belief.geometry().resolution())),
      occupied_near_(belief.geometry().cell_count(), 0),
      mask_(belief.geometry()) {
  const GridGeometry& g = belief.geometry();
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    if (belief.classify(i) != CellClass::Occupied) continue;
    const GridCell c = g.cell_at(i);
    for (const GridCell& o : offsets_) {
      const GridCell n{c.row + o.row, c.col + o.col};
      if (g.in_bounds(n)) ++occupied_near_[g.index_of(n)];
    }
  }
  for (std::size_t i = 0; i < g.cell_count(); ++i) refresh(belief, i);
}

void InflatedCostmap::refresh(const BeliefMap& belief, std::size_t index) {
  mask_.set_blocked(index, belief.classify(index) != CellClass::Free || occupied_near_[index] > 0);
}

void InflatedCostmap::apply(const BeliefMap& belief, const ScanUpdate& update) {
  const GridGeometry& g = belief.geometry();
  for (const CellChange& ch : update.changes) {
    const bool was_occ = ch.before == CellClass::Occupied;
    const bool is_occ = ch.after == CellClass::Occupied;
    if (was_occ != is_occ) {
      const GridCell c = g.cell_at(ch.index);
      for (const GridCell& o : offsets_) {
        const GridCell n{c.row + o.row, c.col + o.col};
        if (!g.in_bounds(n)) continue;
        const std::size_t ni = g.index_of(n);
        if (is_occ) {
          ++occupied_near_[ni];
        } else {
          --occupied_near_[ni];
        }
        refresh(belief, ni);
      }
    }
    refresh(belief, ch.index);
  }
}

std::vector<double> Path::segment_lengths() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < waypoints.size(); ++i) out.push_back(distance(waypoints[i - 1], waypoints[i]));
  return out;
}

double Path::length() const {
  double total = 0.0;
  for (double s : segment_lengths()) total += s;
  return total;
}

double grid_path_cost(std::int64_t cardinal, std::int64_t diagonal, double resolution) {
  return (static_cast<double>(cardinal) + static_cast<double>(diagonal) * std::numbers::sqrt2) * resolution;
}

std::optional<Path> plan_astar(const CostMask& mask, WorldPoint start, WorldPoint goal, PlanStats* stats) {
  const GridGeometry& g = mask.geometry();
  const GridCell s = g.cell_of(start);
  const GridCell t = g.cell_of(goal);
  if (!mask.traversable(s) || !mask.traversable(t)) return std::nullopt;

  const std::size_t n = g.cell_count();
  constexpr std::int64_t kUnset = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> card(n, kUnset);
  std::vector<std::int64_t> diag(n, 0);
  std::vector<std::uint32_t> parent(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<std::uint8_t> closed(n, 0);

  auto g_cost = [&](std::size_t i) { return static_cast<double>(card[i]) + static_cast<double>(diag[i]) * std::numbers::sqrt2; };
  auto heuristic = [&](GridCell c) {
    const double dr = std::abs(c.row - t.row);
    const double dc = std::abs(c.col - t.col);
    return (std::max(dr, dc) - std::min(dr, dc)) + std::numbers::sqrt2 * std::min(dr, dc);
  };

  struct Entry {
    double f;
    double h;
    std::uint32_t index;
    bool operator>(const Entry& o) const {
      if (f != o.f) return f > o.f;
      if (h != o.h) return h > o.h;
      return index > o.index;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  const std::size_t si = g.index_of(s);
  const std::size_t ti = g.index_of(t);
  card[si] = 0;
  diag[si] = 0;
  open.push({heuristic(s), heuristic(s), static_cast<std::uint32_t>(si)});

  std::size_t expansions = 0;
  bool found = false;
  while (!open.empty()) {
    const Entry e = open.top();
    open.pop();
    const std::size_t ci = e.index;
    if (closed[ci]) continue;
    closed[ci] = 1;
    ++expansions;
    if (ci == ti) {
      found = true;
      break;
    }
    const GridCell c = g.cell_at(ci);
    for (int k = 0; k < 8; ++k) {
      const GridCell nb{c.row + kNeighborDr[k], c.col + kNeighborDc[k]};
      if (!mask.traversable(nb)) continue;
      const bool diagonal = k >= 4;
      if (diagonal && (!mask.traversable(GridCell{c.row + kNeighborDr[k], c.col}) ||
                       !mask.traversable(GridCell{c.row, c.col + kNeighborDc[k]}))) {
        continue;
      }
      const std::size_t ni = g.index_of(nb);
      if (closed[ni]) continue;
      const std::int64_t nc = card[ci] + (diagonal ? 0 : 1);
      const std::int64_t nd = diag[ci] + (diagonal ? 1 : 0);
      const double cand = static_cast<double>(nc) + static_cast<double>(nd) * std::numbers::sqrt2;
      if (card[ni] != kUnset && !(cand < g_cost(ni))) continue;
      card[ni] = nc;
      diag[ni] = nd;
      parent[ni] = static_cast<std::uint32_t>(ci);
      const double h = heuristic(nb);
      open.push({cand + h, h, static_cast<std::uint32_t>(ni)});
    }
  }
  if (stats) stats->expansions = expansions;
  if (!found) return std::nullopt;

  Path path;
  for (std::size_t i = ti;; i = parent[i]) {
    path.waypoints.push_back(g.center_of(g.cell_at(i)));
    if (i == si) break;
  }
  std::reverse(path.waypoints.begin(), path.waypoints.end());
  if (stats) {
    stats->cardinal_moves = card[ti];
    stats->diagonal_moves = diag[ti];
  }
  return path;
}

double distance_travelled(std::span<const RobotState> trajectory) {
  double total = 0.0;
  for (std::size_t i = 1; i < trajectory.size(); ++i) {
    total += distance(trajectory[i - 1].position, trajectory[i].position);
  }
  return total;
}

RobotState integrate_unicycle(const RobotState& s, double v, double w, double dt) {
  RobotState next = s;
  next.linear_velocity = v;
  next.angular_velocity = w;
  if (std::abs(w) < 1e-9) {
    next.position.x += v * std::cos(s.heading) * dt;
    next.position.y += v * std::sin(s.heading) * dt;
    next.heading = normalize_angle(s.heading + w * dt);
  } else {
    const double th1 = s.heading + w * dt;
    next.position.x += v / w * (std::sin(th1) - std::sin(s.heading));
    next.position.y -= v / w * (std::cos(th1) - std::cos(s.heading));
    next.heading = normalize_angle(th1);
  }
  return next;
}

}  // namespace explore
