#include "explore_bench/frontiers.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <unordered_map>

namespace explore {
namespace {

// Marking states of the wavefront detector.
enum Mark : std::uint8_t {
  kMapOpen = 1 << 0,
  kMapClosed = 1 << 1,
  kFrontierOpen = 1 << 2,
  kFrontierClosed = 1 << 3,
};

template <class Fn>
void for_each_neighbor(const GridGeometry& g, GridCell c, Connectivity conn, Fn&& fn) {
  const int n = neighbor_count(conn);
  for (int k = 0; k < n; ++k) {
    const GridCell nb{c.row + kNeighborDr[k], c.col + kNeighborDc[k]};
    if (g.in_bounds(nb)) fn(nb);
  }
}

// Extracts the frontier component containing `seed`, marking its cells in `marks`
// with `open`/`closed`.
Frontier extract_component(const BeliefMap& belief, GridCell seed, Connectivity conn,
                           std::vector<std::uint8_t>& marks, std::uint8_t open, std::uint8_t closed,
                           std::size_t& dequeued) {
  const GridGeometry& g = belief.geometry();
  Frontier f;
  std::deque<GridCell> queue{seed};
  marks[g.index_of(seed)] |= open;
  while (!queue.empty()) {
    const GridCell c = queue.front();
    queue.pop_front();
    ++dequeued;
    const std::size_t idx = g.index_of(c);
    if (marks[idx] & closed) continue;
    marks[idx] |= closed;
    f.cells.push_back(c);
    for_each_neighbor(g, c, conn, [&](GridCell nb) {
      const std::size_t ni = g.index_of(nb);
      if (marks[ni] & (open | closed)) return;
      if (!is_frontier_cell(belief, nb)) return;
      marks[ni] |= open;
      queue.push_back(nb);
    });
  }
  finalize_frontier(g, f);
  return f;
}

}  // namespace

bool is_frontier_cell(const BeliefMap& belief, GridCell c) {
  if (belief.classify(c) != CellClass::Free) return false;
  const GridGeometry& g = belief.geometry();
  for (int k = 0; k < 8; ++k) {
    const GridCell nb{c.row + kNeighborDr[k], c.col + kNeighborDc[k]};
    if (g.in_bounds(nb) && belief.classify(nb) == CellClass::Unknown) return true;
  }
  return false;
}

void finalize_frontier(const GridGeometry& grid, Frontier& f) {
  std::sort(f.cells.begin(), f.cells.end());
  f.size = f.cells.size();
  if (f.cells.empty()) return;
  double sx = 0.0;
  double sy = 0.0;
  for (const GridCell& c : f.cells) {
    const WorldPoint p = grid.center_of(c);
    sx += p.x;
    sy += p.y;
  }
  f.centroid = {sx / static_cast<double>(f.size), sy / static_cast<double>(f.size)};
  f.median = grid.center_of(f.cells[f.size / 2]);
}

std::vector<Frontier> detect_frontiers_naive(const BeliefMap& belief, const FrontierParams& params,
                                             ComputeLoadMeter* meter) {
  const GridGeometry& g = belief.geometry();
  std::vector<std::uint8_t> marks(g.cell_count(), 0);
  std::vector<Frontier> out;
  std::size_t dequeued = 0;
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    if (marks[i]) continue;
    const GridCell c = g.cell_at(i);
    if (!is_frontier_cell(belief, c)) continue;
    Frontier f = extract_component(belief, c, params.connectivity, marks, kFrontierOpen,
                                   kFrontierClosed, dequeued);
    if (f.size >= params.min_frontier_size) out.push_back(std::move(f));
  }
  if (meter) meter->add(g.cell_count() + dequeued);
  return out;
}

WfdResult detect_frontiers_wfd(const BeliefMap& belief, GridCell robot_cell, const FrontierParams& params,
                               ComputeLoadMeter* meter) {
  const GridGeometry& g = belief.geometry();
  if (!g.in_bounds(robot_cell) || belief.classify(robot_cell) != CellClass::Free) {
    throw FrontierSearchError(
        fmt::format("robot cell ({}, {}) is not known free", robot_cell.row, robot_cell.col));
  }
  WfdResult result;
  result.depth.assign(g.cell_count(), -1);
  std::vector<std::uint8_t> marks(g.cell_count(), 0);

  std::deque<GridCell> queue{robot_cell};
  const std::size_t robot_idx = g.index_of(robot_cell);
  marks[robot_idx] |= kMapOpen;
  result.depth[robot_idx] = 0;
  while (!queue.empty()) {
    const GridCell p = queue.front();
    queue.pop_front();
    ++result.dequeued;
    const std::size_t pi = g.index_of(p);
    if (marks[pi] & kMapClosed) continue;

    if (!(marks[pi] & (kFrontierOpen | kFrontierClosed)) && is_frontier_cell(belief, p)) {
      Frontier f = extract_component(belief, p, params.connectivity, marks, kFrontierOpen,
                                     kFrontierClosed, result.dequeued);
      if (f.size >= params.min_frontier_size) result.frontiers.push_back(std::move(f));
    }
    // Frontier cells are free, so the wave keeps expanding through them.
    for_each_neighbor(g, p, params.connectivity, [&](GridCell nb) {
      const std::size_t ni = g.index_of(nb);
      if (marks[ni] & (kMapOpen | kMapClosed)) return;
      if (belief.classify(ni) != CellClass::Free) return;
      marks[ni] |= kMapOpen;
      result.depth[ni] = result.depth[pi] + 1;
      queue.push_back(nb);
    });
    marks[pi] |= kMapClosed;
  }
  if (meter) meter->add(result.dequeued);
  return result;
}

std::vector<PointCluster> cluster_frontier_points(std::span<const WorldPoint> points, double cutoff) {
  if (!(cutoff > 0.0)) throw std::invalid_argument("cluster cutoff must be positive");
  const std::size_t n = points.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;  // smaller index becomes the root
  };

  // Bucket by cutoff-sized cells; only neighboring buckets can hold linked pairs.
  auto key = [&](WorldPoint p) {
    const auto bx = static_cast<std::int64_t>(std::floor(p.x / cutoff));
    const auto by = static_cast<std::int64_t>(std::floor(p.y / cutoff));
    return std::pair{bx, by};
  };
  struct PairHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& k) const {
      return std::hash<std::int64_t>{}(k.first * 73856093LL ^ k.second * 19349663LL);
    }
  };
  std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>, PairHash> buckets;
  for (std::size_t i = 0; i < n; ++i) buckets[key(points[i])].push_back(i);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [bx, by] = key(points[i]);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find({bx + dx, by + dy});
        if (it == buckets.end()) continue;
        for (std::size_t j : it->second) {
          if (j <= i) continue;
          if (distance(points[i], points[j]) <= cutoff) unite(i, j);
        }
      }
    }
  }

  std::vector<PointCluster> clusters;
  std::vector<std::size_t> slot(n, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (slot[root] == static_cast<std::size_t>(-1)) {
      slot[root] = clusters.size();
      clusters.emplace_back();
    }
    clusters[slot[root]].members.push_back(i);
  }
  for (PointCluster& c : clusters) {
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t m : c.members) {
      sx += points[m].x;
      sy += points[m].y;
    }
    c.size = c.members.size();
    c.centroid = {sx / static_cast<double>(c.size), sy / static_cast<double>(c.size)};
  }
  return clusters;
}

}  // namespace explore
