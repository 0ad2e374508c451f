#include "explore_bench/rrt.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>

#include "explore_bench/distance_field.hpp"
#include "explore_bench/ray_traversal.hpp"

namespace explore {

RrtTree::RrtTree(WorldPoint root, double eta, const GridGeometry& bounds) : eta_(eta), bounds_(bounds) {
  if (!(eta > 0.0)) throw std::invalid_argument("tree growth step must be positive");
  const double span_x = bounds.max_x() - bounds.min_x();
  const double span_y = bounds.max_y() - bounds.min_y();
  bucket_cols_ = std::max(1, static_cast<int>(std::ceil(span_x / eta)));
  bucket_rows_ = std::max(1, static_cast<int>(std::ceil(span_y / eta)));
  reset(root);
}

void RrtTree::reset(WorldPoint root) {
  nodes_.clear();
  parents_.clear();
  buckets_.assign(static_cast<std::size_t>(bucket_cols_) * static_cast<std::size_t>(bucket_rows_), {});
  add(root, kNoParent);
}

std::size_t RrtTree::bucket_of(WorldPoint p) const {
  const int bc = std::clamp(static_cast<int>(std::floor((p.x - bounds_.min_x()) / eta_)), 0, bucket_cols_ - 1);
  const int br = std::clamp(static_cast<int>(std::floor((p.y - bounds_.min_y()) / eta_)), 0, bucket_rows_ - 1);
  return static_cast<std::size_t>(br) * static_cast<std::size_t>(bucket_cols_) + static_cast<std::size_t>(bc);
}

std::size_t RrtTree::add(WorldPoint p, std::size_t parent) {
  const std::size_t id = nodes_.size();
  nodes_.push_back(p);
  parents_.push_back(parent);
  buckets_[bucket_of(p)].push_back(id);
  return id;
}

std::size_t RrtTree::nearest(WorldPoint q) const {
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  auto consider = [&](std::size_t i) {
    const double dx = nodes_[i].x - q.x;
    const double dy = nodes_[i].y - q.y;
    const double d2 = dx * dx + dy * dy;
    if (d2 < best_d2 || (d2 == best_d2 && i < best)) {
      best_d2 = d2;
      best = i;
    }
  };
  constexpr std::size_t kLinearScanLimit = 256;
  if (nodes_.size() <= kLinearScanLimit) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) consider(i);
    return best;
  }
  const std::size_t qb = bucket_of(q);
  const int qr = static_cast<int>(qb / static_cast<std::size_t>(bucket_cols_));
  const int qc = static_cast<int>(qb % static_cast<std::size_t>(bucket_cols_));
  const int max_ring = std::max(bucket_rows_, bucket_cols_);
  for (int ring = 0; ring <= max_ring; ++ring) {
    // Anything in ring k+1 or beyond is at least k bucket widths away from q.
    if (ring > 0 && best_d2 < std::numeric_limits<double>::infinity()) {
      const double bound = (ring - 1) * eta_;
      if (bound * bound > best_d2) break;
    }
    for (int r = qr - ring; r <= qr + ring; ++r) {
      if (r < 0 || r >= bucket_rows_) continue;
      const bool edge_row = (r == qr - ring || r == qr + ring);
      const int step = edge_row ? 1 : 2 * ring;
      for (int c = qc - ring; c <= qc + ring; c += std::max(step, 1)) {
        if (c < 0 || c >= bucket_cols_) continue;
        for (std::size_t i : buckets_[static_cast<std::size_t>(r) * static_cast<std::size_t>(bucket_cols_) +
                                      static_cast<std::size_t>(c)]) {
          consider(i);
        }
      }
    }
  }
  return best;
}

ExtendResult check_extension(const BeliefMap& belief, WorldPoint from, WorldPoint to) {
  const GridGeometry& g = belief.geometry();
  ExtendResult result;
  if (belief.classify(from) != CellClass::Free) return result;
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  const double len = std::hypot(dx, dy);
  if (len <= 0.0) return result;
  const double ux = dx / len;
  const double uy = dy / len;
  constexpr double kEps = 1e-9;
  result.outcome = ExtendOutcome::Extended;
  result.point = to;
  traverse_ray(g, from, ux, uy, len, [&](GridCell c, double t_enter, double t_exit) {
    if (t_exit - t_enter <= kEps) return true;
    const CellClass cls = belief.classify(c);
    if (cls == CellClass::Occupied) {
      result.outcome = ExtendOutcome::Blocked;
      return false;
    }
    if (cls == CellClass::Unknown) {
      const double t = 0.5 * (t_enter + std::min(t_exit, len));
      result.outcome = ExtendOutcome::Frontier;
      result.point = {from.x + ux * t, from.y + uy * t};
      return false;
    }
    return true;
  });
  // Endpoint cells outside the grid count as unknown to the tree, never as free.
  if (result.outcome == ExtendOutcome::Extended && belief.classify(to) != CellClass::Free) {
    result.outcome = ExtendOutcome::Blocked;
  }
  return result;
}

std::vector<WorldPoint> rrt_step(const BeliefMap& belief, const RobotState& robot, RrtTree& local_tree,
                                 RrtTree& global_tree, std::mt19937_64& rng, ComputeLoadMeter& meter,
                                 const RrtParams& params) {
  const GridGeometry& g = belief.geometry();
  std::uniform_real_distribution<double> ux(g.min_x(), g.max_x());
  std::uniform_real_distribution<double> uy(g.min_y(), g.max_y());
  std::vector<WorldPoint> emitted;
  for (RrtTree* tree : {&global_tree, &local_tree}) {
    const WorldPoint q{ux(rng), uy(rng)};
    const std::size_t near = tree->nearest(q);
    const WorldPoint x_near = tree->node(near);
    meter.add(1);
    const double d = distance(x_near, q);
    if (d < 1e-9) continue;
    const double step = std::min(params.eta, d);
    const WorldPoint x_new{x_near.x + (q.x - x_near.x) / d * step, x_near.y + (q.y - x_near.y) / d * step};
    const ExtendResult ext = check_extension(belief, x_near, x_new);
    switch (ext.outcome) {
      case ExtendOutcome::Extended:
        tree->add(ext.point, near);
        break;
      case ExtendOutcome::Frontier:
        emitted.push_back(ext.point);
        if (tree == &local_tree) local_tree.reset(robot.position);
        break;
      case ExtendOutcome::Blocked:
        break;
    }
  }
  return emitted;
}

double information_gain(const BeliefMap& belief, WorldPoint p, double radius) {
  const GridGeometry& g = belief.geometry();
  std::size_t count = 0;
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    if (belief.classify(i) != CellClass::Unknown) continue;
    if (distance(g.center_of(g.cell_at(i)), p) <= radius) ++count;
  }
  return static_cast<double>(count) * g.cell_area();
}

UnknownAreaIndex::UnknownAreaIndex(const BeliefMap& belief) : geometry_(belief.geometry()) {
  const auto w = static_cast<std::size_t>(geometry_.width());
  const auto h = static_cast<std::size_t>(geometry_.height());
  prefix_.assign((w + 1) * h, 0);
  for (std::size_t r = 0; r < h; ++r) {
    std::uint32_t* row = &prefix_[r * (w + 1)];
    for (std::size_t c = 0; c < w; ++c) {
      row[c + 1] = row[c] + (belief.classify(r * w + c) == CellClass::Unknown ? 1u : 0u);
    }
  }
}

double UnknownAreaIndex::gain(WorldPoint p, double radius) const {
  const double res = geometry_.resolution();
  const WorldPoint o = geometry_.origin();
  const auto w = static_cast<std::size_t>(geometry_.width());
  const int r_lo = std::max(0, static_cast<int>(std::floor((p.y - radius - o.y) / res)) - 1);
  const int r_hi = std::min(geometry_.height() - 1, static_cast<int>(std::floor((p.y + radius - o.y) / res)) + 1);
  std::uint64_t count = 0;
  for (int r = r_lo; r <= r_hi; ++r) {
    const double cy = o.y + (r + 0.5) * res;
    const double dy = cy - p.y;
    if (std::abs(dy) > radius) continue;
    const double half = std::sqrt(radius * radius - dy * dy);
    int c_lo = static_cast<int>(std::ceil((p.x - half - o.x) / res - 0.5));
    int c_hi = static_cast<int>(std::floor((p.x + half - o.x) / res - 0.5));
    // Settle boundary cells with the exact distance test the brute-force count uses.
    auto inside = [&](int c) { return distance(WorldPoint{o.x + (c + 0.5) * res, cy}, p) <= radius; };
    while (c_lo <= c_hi && !inside(c_lo)) ++c_lo;
    while (c_lo - 1 >= 0 && inside(c_lo - 1)) --c_lo;
    while (c_hi >= c_lo && !inside(c_hi)) --c_hi;
    while (c_hi + 1 < geometry_.width() && inside(c_hi + 1)) ++c_hi;
    c_lo = std::max(c_lo, 0);
    c_hi = std::min(c_hi, geometry_.width() - 1);
    if (c_lo > c_hi) continue;
    const std::uint32_t* row = &prefix_[static_cast<std::size_t>(r) * (w + 1)];
    count += row[c_hi + 1] - row[c_lo];
  }
  return static_cast<double>(count) * geometry_.cell_area();
}

namespace {

// BFS hop counts over cells the inflated planner accepts: known free, farther than
// `inflation` from every believed obstacle, diagonal moves without corner cutting.
std::vector<std::int32_t> traversable_depth(const BeliefMap& belief, const std::vector<double>& clearance,
                                            WorldPoint start, double inflation, ComputeLoadMeter& meter) {
  const GridGeometry& g = belief.geometry();
  const double r = inflation / g.resolution();
  const double r2 = r * r + 1e-9;
  auto ok = [&](GridCell c) {
    if (!g.in_bounds(c)) return false;
    const std::size_t i = g.index_of(c);
    return belief.classify(i) == CellClass::Free && clearance[i] * clearance[i] > r2;
  };
  std::vector<std::int32_t> depth(g.cell_count(), -1);
  // The robot may stand inside the inflation band; start from the nearest accepted cell.
  const GridCell rc = g.cell_of(start);
  std::optional<GridCell> seed;
  double best = std::numeric_limits<double>::infinity();
  const int reach = static_cast<int>(std::ceil((inflation + 0.2) / g.resolution()));
  for (int dr = -reach; dr <= reach; ++dr) {
    for (int dc = -reach; dc <= reach; ++dc) {
      const GridCell c{rc.row + dr, rc.col + dc};
      if (!ok(c)) continue;
      const double d = distance(g.center_of(c), start);
      if (d < best) {
        best = d;
        seed = c;
      }
    }
  }
  if (!seed) return depth;
  std::deque<GridCell> queue{*seed};
  depth[g.index_of(*seed)] = 0;
  std::size_t dequeued = 0;
  while (!queue.empty()) {
    const GridCell p = queue.front();
    queue.pop_front();
    ++dequeued;
    const std::int32_t d = depth[g.index_of(p)];
    for (int k = 0; k < 8; ++k) {
      const GridCell nb{p.row + kNeighborDr[k], p.col + kNeighborDc[k]};
      if (!ok(nb) || depth[g.index_of(nb)] >= 0) continue;
      if (k >= 4 && (!ok({p.row + kNeighborDr[k], p.col}) || !ok({p.row, p.col + kNeighborDc[k]}))) continue;
      depth[g.index_of(nb)] = d + 1;
      queue.push_back(nb);
    }
  }
  meter.add(dequeued);
  return depth;
}

}  // namespace

double rrt_revenue(double information_gain, double path_distance, double lambda) {
  return lambda * information_gain - path_distance;
}

StrategyDecision rrt_assign_goal(std::vector<WorldPoint>& candidates, const BeliefMap& belief,
                                 const RobotState& robot, std::span<const WorldPoint> visited,
                                 ComputeLoadMeter& meter, const StrategyParams& params, RrtAssignerState& state) {
  const GridGeometry& g = belief.geometry();
  const double res = g.resolution();
  const double radius = params.goal_obstacle_radius;

  std::vector<std::uint8_t> occupied(g.cell_count(), 0);
  for (std::size_t i = 0; i < g.cell_count(); ++i) occupied[i] = belief.classify(i) == CellClass::Occupied;
  const std::vector<double> clearance = euclidean_distance_transform(g.width(), g.height(), occupied);
  meter.add(g.cell_count());

  // Drop points that are no longer unknown or sit too close to a believed obstacle.
  std::erase_if(candidates, [&](WorldPoint p) {
    if (!g.contains(p) || belief.classify(p) != CellClass::Unknown) return true;
    return clearance[g.index_of(g.cell_of(p))] * res < radius;
  });
  meter.add(candidates.size());

  std::optional<WorldPoint> best_goal;
  double best_revenue = -std::numeric_limits<double>::infinity();
  double best_distance = std::numeric_limits<double>::infinity();
  if (!candidates.empty()) {
    const std::vector<std::int32_t> depth =
        traversable_depth(belief, clearance, robot.position, params.traversal_clearance, meter);
    const UnknownAreaIndex unknown(belief);
    const std::vector<PointCluster> clusters = cluster_frontier_points(candidates, params.rrt.cluster_cutoff);
    const int snap = static_cast<int>(std::ceil(params.rrt.goal_snap_radius / res));
    for (const PointCluster& cluster : clusters) {
      const GridCell cc = g.cell_of(cluster.centroid);
      // Nearest reachable known-free cell around the cluster with the goal clearance.
      std::optional<WorldPoint> goal;
      double goal_d = std::numeric_limits<double>::infinity();
      for (int r = std::max(0, cc.row - snap); r <= std::min(g.height() - 1, cc.row + snap); ++r) {
        for (int c = std::max(0, cc.col - snap); c <= std::min(g.width() - 1, cc.col + snap); ++c) {
          const std::size_t idx = g.index_of({r, c});
          if (depth[idx] < 0 || clearance[idx] * res < radius - 1e-6) continue;
          const WorldPoint p = g.center_of({r, c});
          const double d = distance(p, cluster.centroid);
          if (d > params.rrt.goal_snap_radius || d >= goal_d) continue;
          if (!goal_clearance_ok(belief, p, radius) || is_blacklisted(p, visited, params.blacklist_radius)) continue;
          goal_d = d;
          goal = p;
        }
      }
      meter.add(static_cast<std::uint64_t>((2 * snap + 1) * (2 * snap + 1)));
      if (!goal) continue;
      const double path_distance = depth[g.index_of(g.cell_of(*goal))] * res;
      double gain = unknown.gain(cluster.centroid, params.rrt.info_radius);
      if (distance(robot.position, cluster.centroid) <= params.rrt.hysteresis_radius) {
        gain *= params.rrt.hysteresis_gain;
      }
      const double revenue = rrt_revenue(gain, path_distance, params.rrt.revenue_lambda);
      const bool better = revenue > best_revenue ||
                          (revenue == best_revenue &&
                           (path_distance < best_distance || (path_distance == best_distance && *goal < *best_goal)));
      if (better) {
        best_revenue = revenue;
        best_distance = path_distance;
        best_goal = goal;
      }
    }
  }

  if (best_goal) {
    state.idle_decisions = 0;
    ++state.goals_issued;
    return StrategyDecision::make_goal(*best_goal, "rrt cluster");
  }
  ++state.idle_decisions;
  if (state.idle_decisions < params.rrt.idle_decisions) {
    return StrategyDecision::no_pathable_goal("waiting for frontier points");
  }
  if (state.goals_issued == 0 && !detect_frontiers_naive(belief, params.frontier, &meter).empty()) {
    return StrategyDecision::failed_to_start("trees found no reachable frontier");
  }
  return StrategyDecision::complete("trees exhausted");
}

}  // namespace explore
