#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "explore_bench/compute_meter.hpp"
#include "explore_bench/geometry.hpp"
#include "explore_bench/mapping.hpp"

namespace explore {

/// A connected cluster of known-free cells bordering unknown space.
struct Frontier {
  std::vector<GridCell> cells;  // BFS discovery order
  WorldPoint centroid{};
  WorldPoint median{};  // center of cells[size / 2]; cells are sorted by (row, col)
  std::size_t size = 0;
  double min_distance_hint = 0.0;
};

struct FrontierParams {
  std::size_t min_frontier_size = 3;
  Connectivity connectivity = Connectivity::Eight;
};

/// Free and at least one 8-neighbor Unknown.
bool is_frontier_cell(const BeliefMap& belief, GridCell c);

/// Reference detector: scans every cell.
std::vector<Frontier> detect_frontiers_naive(const BeliefMap& belief, const FrontierParams& params = {},
                                             ComputeLoadMeter* meter = nullptr);

class FrontierSearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WfdResult {
  std::vector<Frontier> frontiers;
  /// BFS hop count from the robot cell through known-free space; -1 where unreached.
  std::vector<std::int32_t> depth;
  std::size_t dequeued = 0;
};

/// Wavefront frontier detector: an outer BFS over known-free cells from the robot,
/// an inner BFS per newly met frontier cell extracting its component.
/// Throws FrontierSearchError if robot_cell is not Free.
WfdResult detect_frontiers_wfd(const BeliefMap& belief, GridCell robot_cell,
                               const FrontierParams& params = {}, ComputeLoadMeter* meter = nullptr);

/// Sorts cells and fills centroid, median and size.
void finalize_frontier(const GridGeometry& grid, Frontier& frontier);

struct PointCluster {
  std::vector<std::size_t> members;  // indices into the input
  WorldPoint centroid{};
  std::size_t size = 0;
};

/// Single-linkage clustering: points within `cutoff` of each other (transitively)
/// share a cluster. Clusters are ordered by their smallest member index.
std::vector<PointCluster> cluster_frontier_points(std::span<const WorldPoint> points, double cutoff);

}  // namespace explore
