#include "explore_bench/strategies.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "explore_bench/rrt.hpp"

namespace explore {
namespace {

// The robot's own cell, or the nearest known-free cell within a few cells of it.
GridCell seed_cell(const BeliefMap& belief, const RobotState& robot) {
  const GridGeometry& g = belief.geometry();
  const GridCell rc = g.cell_of(robot.position);
  if (g.in_bounds(rc) && belief.classify(rc) == CellClass::Free) return rc;
  if (g.in_bounds(rc) && belief.classify(rc) == CellClass::Occupied) {
    throw StrategyError(fmt::format("robot at ({:.3f}, {:.3f}) is inside a believed obstacle",
                                    robot.position.x, robot.position.y));
  }
  constexpr int kSearch = 3;
  std::optional<GridCell> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (int dr = -kSearch; dr <= kSearch; ++dr) {
    for (int dc = -kSearch; dc <= kSearch; ++dc) {
      const GridCell c{rc.row + dr, rc.col + dc};
      if (!g.in_bounds(c) || belief.classify(c) != CellClass::Free) continue;
      const double d = distance(g.center_of(c), robot.position);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
  }
  if (!best) {
    throw StrategyError(fmt::format("no known-free cell near robot at ({:.3f}, {:.3f})", robot.position.x,
                                    robot.position.y));
  }
  return *best;
}

}  // namespace

std::optional<StrategyKind> parse_strategy(std::string_view name) {
  if (name == "wfd") return StrategyKind::Wfd;
  if (name == "lite") return StrategyKind::Lite;
  if (name == "rrt") return StrategyKind::Rrt;
  return std::nullopt;
}

std::string_view strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Wfd:
      return "wfd";
    case StrategyKind::Lite:
      return "lite";
    case StrategyKind::Rrt:
      return "rrt";
  }
  return "unknown";
}

bool goal_clearance_ok(const BeliefMap& belief, WorldPoint p, double radius) {
  const GridGeometry& g = belief.geometry();
  if (belief.classify(p) != CellClass::Free) return false;
  const GridCell pc = g.cell_of(p);
  const int reach = static_cast<int>(std::ceil(radius / g.resolution())) + 1;
  for (int r = std::max(0, pc.row - reach); r <= std::min(g.height() - 1, pc.row + reach); ++r) {
    for (int c = std::max(0, pc.col - reach); c <= std::min(g.width() - 1, pc.col + reach); ++c) {
      if (belief.classify(GridCell{r, c}) != CellClass::Occupied) continue;
      if (distance(g.center_of({r, c}), p) < radius) return false;
    }
  }
  return true;
}

bool is_blacklisted(WorldPoint p, std::span<const WorldPoint> blacklist, double radius) {
  return std::any_of(blacklist.begin(), blacklist.end(),
                     [&](WorldPoint b) { return distance(b, p) <= radius; });
}

std::vector<std::int32_t> free_space_depth(const BeliefMap& belief, GridCell robot_cell, Connectivity conn,
                                           ComputeLoadMeter* meter) {
  const GridGeometry& g = belief.geometry();
  std::vector<std::int32_t> depth(g.cell_count(), -1);
  if (!g.in_bounds(robot_cell) || belief.classify(robot_cell) != CellClass::Free) return depth;
  std::deque<GridCell> queue{robot_cell};
  depth[g.index_of(robot_cell)] = 0;
  std::size_t dequeued = 0;
  const int n = neighbor_count(conn);
  while (!queue.empty()) {
    const GridCell p = queue.front();
    queue.pop_front();
    ++dequeued;
    const std::int32_t d = depth[g.index_of(p)];
    for (int k = 0; k < n; ++k) {
      const GridCell nb{p.row + kNeighborDr[k], p.col + kNeighborDc[k]};
      if (!g.in_bounds(nb)) continue;
      const std::size_t ni = g.index_of(nb);
      if (depth[ni] >= 0 || belief.classify(ni) != CellClass::Free) continue;
      depth[ni] = d + 1;
      queue.push_back(nb);
    }
  }
  if (meter) meter->add(dequeued);
  return depth;
}

StrategyDecision wfd_next_goal(const BeliefMap& belief, const RobotState& robot, ComputeLoadMeter& meter,
                               const StrategyParams& params, std::span<const WorldPoint> blacklist) {
  const GridGeometry& g = belief.geometry();
  const WfdResult wfd = detect_frontiers_wfd(belief, seed_cell(belief, robot), params.frontier, &meter);
  std::optional<std::size_t> best;
  std::int32_t best_depth = std::numeric_limits<std::int32_t>::max();
  for (std::size_t i = 0; i < wfd.frontiers.size(); ++i) {
    const Frontier& f = wfd.frontiers[i];
    if (!goal_clearance_ok(belief, f.median, params.goal_obstacle_radius)) continue;
    if (is_blacklisted(f.median, blacklist, params.blacklist_radius)) continue;
    const std::int32_t d = wfd.depth[g.index_of(f.cells[f.size / 2])];
    if (d < 0) continue;
    if (d < best_depth) {
      best_depth = d;
      best = i;
    }
  }
  if (!best) {
    return wfd.frontiers.empty() ? StrategyDecision::complete("no frontier")
                                 : StrategyDecision::complete("no frontier keeps the goal clearance");
  }
  return StrategyDecision::make_goal(wfd.frontiers[*best].median, "wfd median");
}

double frontier_weight(double size_m, double path_distance, const LiteParams& params) {
  return params.gain_weight * size_m - params.distance_weight * path_distance;
}

std::optional<std::size_t> pick_lightweight(std::span<const LiteCandidate> candidates, const LiteParams& params) {
  std::optional<std::size_t> best;
  double best_w = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const LiteCandidate& c = candidates[i];
    const double w = frontier_weight(c.size_m, c.path_distance, params);
    bool better = !best || w > best_w;
    if (best && w == best_w) {
      const LiteCandidate& b = candidates[*best];
      better = c.path_distance < b.path_distance ||
               (c.path_distance == b.path_distance && c.centroid < b.centroid);
    }
    if (better) {
      best = i;
      best_w = w;
    }
  }
  return best;
}

StrategyDecision lightweight_next_goal(const BeliefMap& belief, const RobotState& robot,
                                       std::span<const WorldPoint> blacklist, ComputeLoadMeter& meter,
                                       const StrategyParams& params) {
  const GridGeometry& g = belief.geometry();
  const WfdResult wfd = detect_frontiers_wfd(belief, seed_cell(belief, robot), params.frontier, &meter);
  const double radius = params.goal_obstacle_radius;
  auto usable = [&](WorldPoint p) {
    return wfd.depth[g.index_of(g.cell_of(p))] >= 0 && goal_clearance_ok(belief, p, radius) &&
           !is_blacklisted(p, blacklist, params.blacklist_radius);
  };

  std::vector<LiteCandidate> candidates;
  for (const Frontier& f : wfd.frontiers) {
    LiteCandidate cand;
    cand.centroid = f.centroid;
    cand.size_m = static_cast<double>(f.size) * g.resolution();
    std::optional<WorldPoint> goal;
    if (g.contains(f.centroid) && usable(f.centroid)) {
      goal = f.centroid;
    } else {
      double best_d = std::numeric_limits<double>::infinity();
      for (const GridCell& c : f.cells) {
        const WorldPoint p = g.center_of(c);
        const double d = distance(p, f.centroid);
        if (d < best_d && usable(p)) {
          best_d = d;
          goal = p;
        }
      }
    }
    if (!goal) continue;
    cand.goal = *goal;
    cand.path_distance = wfd.depth[g.index_of(g.cell_of(*goal))] * g.resolution();
    candidates.push_back(cand);
  }
  const auto pick = pick_lightweight(candidates, params.lite);
  if (!pick) {
    return wfd.frontiers.empty() ? StrategyDecision::complete("no frontier")
                                 : StrategyDecision::complete("no scorable frontier");
  }
  return StrategyDecision::make_goal(candidates[*pick].goal, "lite centroid");
}

namespace {

class WfdStrategy final : public ExplorationStrategy {
 public:
  explicit WfdStrategy(const StrategyParams& params) : params_(params) {}
  StrategyKind kind() const override { return StrategyKind::Wfd; }
  StrategyDecision decide(const BeliefMap& belief, const RobotState& robot, std::span<const WorldPoint> blacklist,
                          ComputeLoadMeter& meter) override {
    return wfd_next_goal(belief, robot, meter, params_, blacklist);
  }

 private:
  StrategyParams params_;
};

class LiteStrategy final : public ExplorationStrategy {
 public:
  explicit LiteStrategy(const StrategyParams& params) : params_(params) {}
  StrategyKind kind() const override { return StrategyKind::Lite; }
  StrategyDecision decide(const BeliefMap& belief, const RobotState& robot, std::span<const WorldPoint> blacklist,
                          ComputeLoadMeter& meter) override {
    return lightweight_next_goal(belief, robot, blacklist, meter, params_);
  }

 private:
  StrategyParams params_;
};

class RrtStrategy final : public ExplorationStrategy {
 public:
  RrtStrategy(const StrategyParams& params, const GridGeometry& geometry, WorldPoint entry, std::uint64_t seed)
      : params_(params),
        local_(entry, params.rrt.eta, geometry),
        global_(entry, params.rrt.eta, geometry),
        rng_(seed) {}

  StrategyKind kind() const override { return StrategyKind::Rrt; }

  void on_step(const BeliefMap& belief, const RobotState& robot, ComputeLoadMeter& meter) override {
    for (int i = 0; i < params_.rrt.iterations_per_step; ++i) {
      std::vector<WorldPoint> found = rrt_step(belief, robot, local_, global_, rng_, meter, params_.rrt);
      candidates_.insert(candidates_.end(), found.begin(), found.end());
    }
    if (candidates_.size() > params_.rrt.max_candidates) {
      candidates_.erase(candidates_.begin(),
                        candidates_.begin() + static_cast<std::ptrdiff_t>(candidates_.size() - params_.rrt.max_candidates));
    }
  }

  StrategyDecision decide(const BeliefMap& belief, const RobotState& robot, std::span<const WorldPoint> blacklist,
                          ComputeLoadMeter& meter) override {
    return rrt_assign_goal(candidates_, belief, robot, blacklist, meter, params_, state_);
  }

 private:
  StrategyParams params_;
  RrtTree local_;
  RrtTree global_;
  std::mt19937_64 rng_;
  std::vector<WorldPoint> candidates_;
  RrtAssignerState state_;
};

}  // namespace

std::unique_ptr<ExplorationStrategy> make_strategy(StrategyKind kind, const StrategyParams& params,
                                                   const GridGeometry& geometry, WorldPoint entry,
                                                   std::uint64_t seed) {
  switch (kind) {
    case StrategyKind::Wfd:
      return std::make_unique<WfdStrategy>(params);
    case StrategyKind::Lite:
      return std::make_unique<LiteStrategy>(params);
    case StrategyKind::Rrt:
      return std::make_unique<RrtStrategy>(params, geometry, entry, seed);
  }
  throw std::invalid_argument("unknown strategy kind");
}

}  // namespace explore
