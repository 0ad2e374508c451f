#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "explore_bench/ray_traversal.hpp"
#include "explore_bench/sensing.hpp"
#include "support.hpp"

namespace explore {
namespace {

using testing::box_rows;
using testing::map_from_rows;

struct Rect {
  double x0, y0, x1, y1;
};

// Slab-method entry distance of the ray into an axis-aligned rectangle; +inf on a miss.
double ray_rect_entry(WorldPoint o, double dx, double dy, const Rect& r) {
  double t_lo = -std::numeric_limits<double>::infinity();
  double t_hi = std::numeric_limits<double>::infinity();
  auto slab = [&](double origin, double dir, double lo, double hi) {
    if (dir == 0.0) {
      if (origin < lo || origin >= hi) t_lo = std::numeric_limits<double>::infinity();
      return;
    }
    double a = (lo - origin) / dir;
    double b = (hi - origin) / dir;
    if (a > b) std::swap(a, b);
    t_lo = std::max(t_lo, a);
    t_hi = std::min(t_hi, b);
  };
  slab(o.x, dx, r.x0, r.x1);
  slab(o.y, dy, r.y0, r.y1);
  if (t_lo > t_hi || t_hi < 0.0) return std::numeric_limits<double>::infinity();
  return std::max(t_lo, 0.0);
}

LidarParams coarse_lidar() {
  LidarParams p;
  p.angular_resolution = 1.0 * std::numbers::pi / 180.0;
  return p;
}

TEST(Sensing, BeamCountCoversFieldOfView) {
  EXPECT_EQ(beam_count(LidarParams{}), 1081u);
  EXPECT_EQ(beam_count(coarse_lidar()), 271u);
}

TEST(Sensing, EmptyWorldReportsMaxRange) {
  const GroundTruthMap map = map_from_rows(box_rows(1000, 1000), 0.1, {{50.0, 50.0}});
  RobotState pose;
  pose.position = {50.0, 50.0};
  std::mt19937_64 rng(1);
  const LidarScan scan = simulate_scan(map, pose, LidarParams{}, rng);
  ASSERT_EQ(scan.ranges.size(), 1081u);
  for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
    EXPECT_EQ(scan.ranges[i], 8.0);
    EXPECT_FALSE(scan.is_return(i));
  }
}

TEST(Sensing, WallAheadAtTwoMeters) {
  auto rows = box_rows(100, 60);
  for (auto& r : rows) r[70] = '#';  // face at x = 7.0
  const GroundTruthMap map = map_from_rows(rows, 0.1, {{5.0, 3.0}});
  RobotState pose;
  pose.position = {5.0, 3.05};
  std::mt19937_64 rng(1);
  const LidarScan scan = simulate_scan(map, pose, LidarParams{}, rng);
  const std::size_t center = scan.ranges.size() / 2;
  EXPECT_NEAR(scan.beam_angle(center), 0.0, 1e-12);
  EXPECT_NEAR(scan.ranges[center], 2.0, 0.05);
  EXPECT_TRUE(scan.is_return(center));
}

TEST(Sensing, MatchesAnalyticRectangleIntersection) {
  auto rows = box_rows(80, 60);
  // Obstacle block covering x in [3.0, 4.2), y in [2.0, 2.7).
  for (int r = 20; r < 27; ++r) {
    for (int c = 30; c < 42; ++c) rows[static_cast<std::size_t>(59 - r)][static_cast<std::size_t>(c)] = '#';
  }
  const GroundTruthMap map = map_from_rows(rows, 0.1, {{1.0, 1.0}});
  const std::vector<Rect> rects = {{0.0, 0.0, 8.0, 0.1}, {0.0, 5.9, 8.0, 6.0}, {0.0, 0.0, 0.1, 6.0},
                                   {7.9, 0.0, 8.0, 6.0}, {3.0, 2.0, 4.2, 2.7}};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0.3, 7.7), uy(0.3, 5.7), ua(-std::numbers::pi, std::numbers::pi);
  int checked = 0;
  while (checked < 2000) {
    const WorldPoint o{ux(rng), uy(rng)};
    if (!map.is_free(o)) continue;
    const double a = ua(rng);
    double expected = 8.0;
    for (const Rect& r : rects) expected = std::min(expected, ray_rect_entry(o, std::cos(a), std::sin(a), r));
    EXPECT_NEAR(cast_ray(map, o, a, 8.0), expected, 1e-9) << o.x << "," << o.y << " @ " << a;
    ++checked;
  }
}

TEST(Sensing, NearWallRangesStayPositive) {
  const GroundTruthMap map = map_from_rows(box_rows(60, 60), 0.1, {{3.0, 3.0}});
  RobotState pose;
  pose.position = {3.0, 5.85};  // 0.05 m below the top wall face at y = 5.9
  pose.heading = std::numbers::pi / 2.0;
  std::mt19937_64 rng(1);
  const LidarScan scan = simulate_scan(map, pose, LidarParams{}, rng);
  const double min_range = *std::min_element(scan.ranges.begin(), scan.ranges.end());
  EXPECT_NEAR(min_range, 0.05, 1e-9);
  for (double r : scan.ranges) {
    EXPECT_GT(r, 0.0);
    EXPECT_LE(r, 8.0);
  }
}

TEST(Sensing, PoseInsideObstacleThrows) {
  const GroundTruthMap map = map_from_rows(box_rows(30, 30), 0.1, {{1.5, 1.5}});
  RobotState pose;
  pose.position = {0.05, 1.5};
  std::mt19937_64 rng(1);
  EXPECT_THROW(simulate_scan(map, pose, LidarParams{}, rng), PoseInObstacleError);
}

TEST(Sensing, NoisyScansAreSeedDeterministicAndClamped) {
  const GroundTruthMap map = map_from_rows(box_rows(60, 60), 0.1, {{3.0, 3.0}});
  LidarParams p;
  p.noise_stddev = 0.2;
  RobotState pose;
  pose.position = {0.3, 3.0};
  std::mt19937_64 a(99), b(99), c(100);
  const LidarScan sa = simulate_scan(map, pose, p, a);
  const LidarScan sb = simulate_scan(map, pose, p, b);
  const LidarScan sc = simulate_scan(map, pose, p, c);
  EXPECT_EQ(sa.ranges, sb.ranges);
  EXPECT_NE(sa.ranges, sc.ranges);
  for (double r : sa.ranges) {
    EXPECT_GT(r, 0.0);
    EXPECT_LE(r, p.range_max);
  }
}

TEST(Sensing, AddingObstacleNeverLengthensBeams) {
  std::mt19937_64 rng(3);
  const auto base_rows = box_rows(80, 80);
  for (int trial = 0; trial < 20; ++trial) {
    auto rows = base_rows;
    std::uniform_int_distribution<int> cell(1, 78);
    const GroundTruthMap before = map_from_rows(rows, 0.1, {{4.0, 4.0}});
    for (int k = 0; k < 40; ++k) {
      const int r = cell(rng);
      const int c = cell(rng);
      if (std::abs(r - 40) < 3 && std::abs(c - 40) < 3) continue;
      rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = '#';
    }
    const GroundTruthMap after = map_from_rows(rows, 0.1, {{4.05, 3.95}});
    RobotState pose;
    pose.position = {4.05, 3.95};
    pose.heading = 0.3 * trial;
    std::mt19937_64 na(1), nb(1);
    const LidarScan sa = simulate_scan(before, pose, coarse_lidar(), na);
    const LidarScan sb = simulate_scan(after, pose, coarse_lidar(), nb);
    for (std::size_t i = 0; i < sa.ranges.size(); ++i) EXPECT_LE(sb.ranges[i], sa.ranges[i]);
  }
}

TEST(Sensing, RadiallySymmetricWorldGivesSymmetricScan) {
  const int n = 100;
  std::vector<std::string> rows(n, std::string(n, '.'));
  const double cx = 5.0, cy = 5.0;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double x = (c + 0.5) * 0.1, y = (r + 0.5) * 0.1;
      if (std::hypot(x - cx, y - cy) >= 3.0 || r == 0 || c == 0 || r == n - 1 || c == n - 1) {
        rows[static_cast<std::size_t>(n - 1 - r)][static_cast<std::size_t>(c)] = '#';
      }
    }
  }
  const GroundTruthMap map = map_from_rows(rows, 0.1, {{cx, cy}});
  RobotState pose;
  pose.position = {cx, cy};
  std::mt19937_64 rng(1);
  const LidarScan scan = simulate_scan(map, pose, LidarParams{}, rng);
  const std::size_t mid = scan.ranges.size() / 2;
  for (std::size_t i = 1; i <= mid; ++i) {
    EXPECT_NEAR(scan.ranges[mid - i], scan.ranges[mid + i], 0.1 * std::sqrt(2.0));
  }
}

TEST(RayTraversal, VisitsEveryCellTheRayPassesThrough) {
  const GridGeometry g(50, 50, 0.1, {0.0, 0.0});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.2, 4.8), ua(-std::numbers::pi, std::numbers::pi);
  for (int trial = 0; trial < 300; ++trial) {
    const WorldPoint o{u(rng), u(rng)};
    const double a = ua(rng);
    const double dx = std::cos(a), dy = std::sin(a);
    std::vector<GridCell> visited;
    double last_exit = 0.0;
    traverse_ray(g, o, dx, dy, 3.0, [&](GridCell c, double t0, double t1) {
      EXPECT_NEAR(t0, last_exit, 1e-12);
      EXPECT_LE(t0, t1);
      last_exit = t1;
      visited.push_back(c);
      return true;
    });
    ASSERT_FALSE(visited.empty());
    EXPECT_EQ(visited.front(), g.cell_of(o));
    for (std::size_t i = 1; i < visited.size(); ++i) {
      EXPECT_EQ(std::abs(visited[i].row - visited[i - 1].row) + std::abs(visited[i].col - visited[i - 1].col), 1);
    }
    const std::set<GridCell> visited_set(visited.begin(), visited.end());
    for (double t = 0.0; t <= 3.0; t += 0.001) {
      const WorldPoint p{o.x + t * dx, o.y + t * dy};
      if (!g.contains(p)) break;
      EXPECT_TRUE(visited_set.count(g.cell_of(p))) << "t=" << t;
    }
  }
}

}  // namespace
}  // namespace explore
