#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "explore_bench/strategies.hpp"

namespace explore {

/// Rapidly-exploring random tree over the map bounds with a bucket index for
/// nearest-node queries.
class RrtTree {
 public:
  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

  RrtTree(WorldPoint root, double eta, const GridGeometry& bounds);

  void reset(WorldPoint root);
  std::size_t add(WorldPoint p, std::size_t parent);

  std::size_t size() const { return nodes_.size(); }
  WorldPoint node(std::size_t i) const { return nodes_[i]; }
  std::size_t parent(std::size_t i) const { return parents_[i]; }
  WorldPoint root() const { return nodes_.front(); }
  double eta() const { return eta_; }
  const GridGeometry& bounds() const { return bounds_; }

  std::size_t nearest(WorldPoint q) const;

 private:
  std::size_t bucket_of(WorldPoint p) const;

  double eta_;
  GridGeometry bounds_;
  int bucket_cols_ = 1;
  int bucket_rows_ = 1;
  std::vector<WorldPoint> nodes_;
  std::vector<std::size_t> parents_;
  std::vector<std::vector<std::size_t>> buckets_;
};

enum class ExtendOutcome { Extended, Frontier, Blocked };

struct ExtendResult {
  ExtendOutcome outcome = ExtendOutcome::Blocked;
  WorldPoint point{};  // new node or emitted frontier point
};

/// Classifies the segment from `from` toward `to` (already length-limited).
/// Blocked if `from` is not known free or an occupied cell comes first; Frontier
/// (with a point inside the first unknown cell) if an unknown cell comes first.
ExtendResult check_extension(const BeliefMap& belief, WorldPoint from, WorldPoint to);

/// One detector iteration on each tree. Emitted points restart the local tree at the robot.
std::vector<WorldPoint> rrt_step(const BeliefMap& belief, const RobotState& robot, RrtTree& local_tree,
                                 RrtTree& global_tree, std::mt19937_64& rng, ComputeLoadMeter& meter,
                                 const RrtParams& params = {});

/// Unknown area (m^2) of cells whose centers lie within `radius` of p. Brute force.
double information_gain(const BeliefMap& belief, WorldPoint p, double radius);

/// Row prefix sums of unknown cells for fast disk counts.
class UnknownAreaIndex {
 public:
  explicit UnknownAreaIndex(const BeliefMap& belief);
  double gain(WorldPoint p, double radius) const;

 private:
  GridGeometry geometry_;
  std::vector<std::uint32_t> prefix_;  // (width + 1) entries per row
};

double rrt_revenue(double information_gain, double path_distance, double lambda);

struct RrtAssignerState {
  int idle_decisions = 0;
  std::size_t goals_issued = 0;
};

/// Prunes the candidate buffer, clusters it, and returns the cluster goal with the
/// best revenue. After idle_decisions empty decisions in a row: Complete, or
/// FailedToStart if no goal was ever issued while frontiers remain.
StrategyDecision rrt_assign_goal(std::vector<WorldPoint>& candidates, const BeliefMap& belief,
                                 const RobotState& robot, std::span<const WorldPoint> visited,
                                 ComputeLoadMeter& meter, const StrategyParams& params, RrtAssignerState& state);

}  // namespace explore
