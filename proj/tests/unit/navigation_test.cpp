#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "../common/oracles.hpp"
#include "explore_bench/distance_field.hpp"
#include "explore_bench/navigation.hpp"
#include "explore_bench/sensing.hpp"
#include "support.hpp"

namespace explore {
namespace {

using testing::bundled_map_path;

TEST(DistanceTransform, MatchesBruteForce) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const int w = 5 + static_cast<int>(rng() % 40), h = 5 + static_cast<int>(rng() % 40);
    std::vector<std::uint8_t> src(static_cast<std::size_t>(w * h), 0);
    const double density = (trial % 4) * 0.05;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& s : src) s = u(rng) < density;
    const auto edt = euclidean_distance_transform(w, h, src);
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        double best = std::numeric_limits<double>::infinity();
        for (int r2 = 0; r2 < h; ++r2) {
          for (int c2 = 0; c2 < w; ++c2) {
            if (src[static_cast<std::size_t>(r2 * w + c2)]) best = std::min(best, std::hypot(r - r2, c - c2));
          }
        }
        const double got = edt[static_cast<std::size_t>(r * w + c)];
        if (std::isinf(best)) {
          EXPECT_TRUE(std::isinf(got));
        } else {
          EXPECT_NEAR(got, best, 1e-9);
        }
      }
    }
  }
}

TEST(Inflation, ZeroRadiusBlocksExactlyOccupiedCells) {
  const auto rb = oracle::random_connected_belief(3, 40, 40);
  const CostMask mask = inflate(rb.belief, 0.0);
  for (std::size_t i = 0; i < rb.belief.geometry().cell_count(); ++i) {
    EXPECT_EQ(!mask.traversable(i), rb.belief.classify(i) != CellClass::Free);
  }
  const GroundTruthMap map = load_map_file(bundled_map_path("room"));
  const BeliefMap known = testing::fully_known_belief(map);
  const CostMask km = inflate(known, 0.0);
  for (std::size_t i = 0; i < known.geometry().cell_count(); ++i) {
    EXPECT_EQ(!km.traversable(i), map.at(i) == Occupancy::Occupied);
  }
}

TEST(Inflation, SingleCellDiskIsFiveByFiveMinusCorners) {
  BeliefMap b(GridGeometry(11, 11, 0.1, {0, 0}));
  for (int r = 0; r < 11; ++r) {
    for (int c = 0; c < 11; ++c) b.set_class({r, c}, CellClass::Free);
  }
  b.set_class({5, 5}, CellClass::Occupied);
  const CostMask mask = inflate(b, 0.26);
  int blocked = 0;
  for (int r = 0; r < 11; ++r) {
    for (int c = 0; c < 11; ++c) {
      const bool expect = std::hypot(r - 5, c - 5) * 0.1 <= 0.26;
      EXPECT_EQ(!mask.traversable(GridCell{r, c}), expect) << r << "," << c;
      blocked += !mask.traversable(GridCell{r, c});
    }
  }
  EXPECT_EQ(blocked, 21);
  EXPECT_EQ(disk_offsets(0.26, 0.1).size(), 21u);
}

TEST(Inflation, IncrementalMatchesFullRecompute) {
  const GroundTruthMap map = load_map_file(bundled_map_path("apartment"));
  BeliefMap belief(map.geometry());
  InflatedCostmap costmap(belief, 0.4);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ux(-4.5, 4.5), uy(-4.5, 4.5), ua(-3.0, 3.0);
  LidarParams lidar;
  lidar.angular_resolution = std::numbers::pi / 180.0;
  lidar.noise_stddev = 0.05;  // noise makes cells flip back and forth
  for (int k = 0; k < 25;) {
    RobotState pose;
    pose.position = {ux(rng), uy(rng)};
    pose.heading = ua(rng);
    if (distance_to_nearest_obstacle(map, pose.position, 0.3) < 0.3) continue;
    const ScanUpdate u = belief.integrate_scan(simulate_scan(map, pose, lidar, rng));
    costmap.apply(belief, u);
    EXPECT_TRUE(costmap.mask() == inflate(belief, 0.4)) << "after scan " << k;
    ++k;
  }
}

TEST(AStar, StartEqualsGoalIsZeroLength) {
  CostMask mask(GridGeometry(5, 5, 1.0, {0, 0}));
  for (std::size_t i = 0; i < 25; ++i) mask.set_blocked(i, false);
  PlanStats stats;
  const auto path = plan_astar(mask, {2.5, 2.5}, {2.5, 2.5}, &stats);
  ASSERT_TRUE(path.has_value());
  EXPECT_EQ(path->length(), 0.0);
  EXPECT_EQ(path->waypoints.size(), 1u);
}

TEST(AStar, EmptyGridDiagonalCost) {
  CostMask mask(GridGeometry(10, 10, 1.0, {0, 0}));
  for (std::size_t i = 0; i < 100; ++i) mask.set_blocked(i, false);
  PlanStats stats;
  const auto path = plan_astar(mask, {0.5, 0.5}, {9.5, 9.5}, &stats);
  ASSERT_TRUE(path.has_value());
  EXPECT_DOUBLE_EQ(grid_path_cost(stats.cardinal_moves, stats.diagonal_moves, 1.0), 9.0 * std::sqrt(2.0));
  EXPECT_NEAR(path->length(), 9.0 * std::sqrt(2.0), 1e-12);
}

TEST(AStar, BlockedEndpointsAndUnreachableGoal) {
  CostMask mask(GridGeometry(10, 3, 1.0, {0, 0}));
  for (std::size_t i = 0; i < 30; ++i) mask.set_blocked(i, false);
  for (int r = 0; r < 3; ++r) mask.set_blocked(mask.geometry().index_of({r, 5}), true);
  EXPECT_FALSE(plan_astar(mask, {0.5, 1.5}, {9.5, 1.5}).has_value());
  EXPECT_FALSE(plan_astar(mask, {5.5, 1.5}, {0.5, 1.5}).has_value());
}

TEST(AStar, NoCornerCutting) {
  CostMask mask(GridGeometry(2, 2, 1.0, {0, 0}));
  mask.set_blocked(mask.geometry().index_of({0, 0}), false);
  mask.set_blocked(mask.geometry().index_of({1, 1}), false);
  EXPECT_FALSE(plan_astar(mask, {0.5, 0.5}, {1.5, 1.5}).has_value());
}

TEST(AStar, CostEqualsDijkstraOnRandomGrids) {
  int solved = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto pc = oracle::random_planning_case(seed);
    PlanStats stats;
    const auto path = plan_astar(pc.mask, pc.start, pc.goal, &stats);
    const auto expected = oracle::dijkstra_cost(pc.mask, pc.start, pc.goal);
    ASSERT_EQ(path.has_value(), expected.has_value()) << seed;
    if (!path) continue;
    ++solved;
    const double res = pc.mask.geometry().resolution();
    EXPECT_EQ(grid_path_cost(stats.cardinal_moves, stats.diagonal_moves, res), *expected) << seed;
    EXPECT_NEAR(path->length(), *expected, 1e-9);
    for (const WorldPoint& p : path->waypoints) EXPECT_TRUE(pc.mask.traversable(p));
    EXPECT_EQ(pc.mask.geometry().cell_of(path->waypoints.front()), pc.mask.geometry().cell_of(pc.start));
    EXPECT_EQ(pc.mask.geometry().cell_of(path->waypoints.back()), pc.mask.geometry().cell_of(pc.goal));
  }
  EXPECT_GT(solved, 30);
}

TEST(PathLength, SegmentsSumToLength) {
  Path p{{{0, 0}, {3, 4}, {3, 5}}};
  const auto seg = p.segment_lengths();
  ASSERT_EQ(seg.size(), 2u);
  EXPECT_DOUBLE_EQ(seg[0], 5.0);
  EXPECT_DOUBLE_EQ(seg[1], 1.0);
  EXPECT_DOUBLE_EQ(p.length(), 6.0);
}

TEST(DistanceTravelled, Examples) {
  std::vector<RobotState> one(1);
  EXPECT_EQ(distance_travelled(one), 0.0);
  std::vector<RobotState> square(5);
  const WorldPoint corners[] = {{0, 0}, {2, 0}, {2, 2}, {0, 2}, {0, 0}};
  for (int i = 0; i < 5; ++i) square[static_cast<std::size_t>(i)].position = corners[i];
  EXPECT_DOUBLE_EQ(distance_travelled(square), 8.0);
}

TEST(Unicycle, ExactArcIntegration) {
  RobotState s;
  s.heading = 0.3;
  const double v = 0.4, w = 0.5, dt = 0.1;
  const RobotState n = integrate_unicycle(s, v, w, dt);
  // Closed form for a circular arc of radius v / w.
  const double radius = v / w;
  EXPECT_NEAR(n.position.x, radius * (std::sin(0.3 + w * dt) - std::sin(0.3)), 1e-15);
  EXPECT_NEAR(n.position.y, -radius * (std::cos(0.3 + w * dt) - std::cos(0.3)), 1e-15);
  EXPECT_NEAR(n.heading, 0.35, 1e-15);
  // Many small steps equal one big step on the same arc.
  RobotState m = s;
  for (int i = 0; i < 100; ++i) m = integrate_unicycle(m, v, w, dt / 100.0);
  EXPECT_NEAR(m.position.x, n.position.x, 1e-12);
  EXPECT_NEAR(m.position.y, n.position.y, 1e-12);
  const RobotState straight = integrate_unicycle(s, 0.5, 0.0, 2.0);
  EXPECT_NEAR(straight.position.x, std::cos(0.3), 1e-15);
  EXPECT_NEAR(straight.position.y, std::sin(0.3), 1e-15);
}

TEST(Limits, Bounds) {
  const KinematicLimits lim;
  RobotState s;
  s.linear_velocity = 0.5;
  s.angular_velocity = -0.5;
  EXPECT_TRUE(within_limits(s, lim));
  s.linear_velocity = -0.1;
  EXPECT_TRUE(within_limits(s, lim));
  s.linear_velocity = -0.11;
  EXPECT_FALSE(within_limits(s, lim));
  s.linear_velocity = 0.0;
  s.angular_velocity = 0.51;
  EXPECT_FALSE(within_limits(s, lim));
}

}  // namespace
}  // namespace explore
