#include <gtest/gtest.h>

#include <deque>

#include "explore_bench/envmap.hpp"
#include "support.hpp"

namespace explore {
namespace {

using testing::box_rows;
using testing::bundled_map_path;
using testing::map_from_rows;

const char* const kBundled[] = {"room", "apartment", "office", "hallway", "maze_house", "school"};

// Occupied components that do not touch the outer ring.
std::size_t interior_obstacle_count(const GroundTruthMap& map) {
  const GridGeometry& g = map.geometry();
  std::vector<int> label(g.cell_count(), -1);
  std::size_t count = 0;
  int next = 0;
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    if (map.at(i) != Occupancy::Occupied || label[i] >= 0) continue;
    bool touches_boundary = false;
    std::deque<GridCell> queue{g.cell_at(i)};
    label[i] = next;
    while (!queue.empty()) {
      const GridCell c = queue.front();
      queue.pop_front();
      if (c.row == 0 || c.col == 0 || c.row == g.height() - 1 || c.col == g.width() - 1) touches_boundary = true;
      for (int k = 0; k < 8; ++k) {
        const GridCell n{c.row + kNeighborDr[k], c.col + kNeighborDc[k]};
        if (!g.in_bounds(n) || map.at(n) != Occupancy::Occupied || label[g.index_of(n)] >= 0) continue;
        label[g.index_of(n)] = next;
        queue.push_back(n);
      }
    }
    ++next;
    if (!touches_boundary) ++count;
  }
  return count;
}

TEST(GridGeometry, CellCenterRoundTrip) {
  const GridGeometry g(37, 23, 0.1, {-1.85, 2.3});
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      EXPECT_EQ(g.cell_of(g.center_of({r, c})), (GridCell{r, c}));
      EXPECT_EQ(g.cell_at(g.index_of({r, c})), (GridCell{r, c}));
    }
  }
}

TEST(LoadMap, TenByTenInteriorArea) {
  const GroundTruthMap map = map_from_rows(box_rows(10, 10), 0.1, {{0.5, 0.5}});
  EXPECT_EQ(map.free_cell_count(), 64u);
  EXPECT_NEAR(map.total_free_area(), 0.64, 1e-12);
  EXPECT_NEAR(free_area(map), 0.64, 1e-12);
}

TEST(LoadMap, ShortRowIsParseError) {
  auto rows = box_rows(10, 10);
  rows[4].pop_back();
  EXPECT_THROW(map_from_rows(rows, 0.1, {{0.5, 0.5}}), MapParseError);
}

TEST(LoadMap, MalformedHeaderIsParseError) {
  EXPECT_THROW(load_map("name x\nresolution abc\norigin 0 0\nentries 0.5,0.5\n###\n#.#\n###\n"), MapParseError);
  EXPECT_THROW(load_map("name x\nresolution 1\norigin 0 0\nentries 1.5;1.5\n###\n#.#\n###\n"), MapParseError);
  EXPECT_THROW(load_map("name x\nresolution 1\norigin 0 0\nentries 1.5,1.5\n###\n#x#\n###\n"), MapParseError);
}

TEST(LoadMap, OpenBoundaryIsValidationError) {
  auto rows = box_rows(10, 10);
  rows[0][4] = '.';
  EXPECT_THROW(map_from_rows(rows, 0.1, {{0.5, 0.5}}), MapValidationError);
}

TEST(LoadMap, EntryInObstacleIsValidationError) {
  auto rows = box_rows(20, 20);
  rows[10][10] = '#';  // grid row 9, col 10
  EXPECT_THROW(map_from_rows(rows, 0.1, {{1.05, 0.95}}), MapValidationError);
  EXPECT_THROW(map_from_rows(rows, 0.1, {{0.05, 0.05}}), MapValidationError);
}

TEST(BundledMaps, RoomLoadsWithEntries) {
  const GroundTruthMap map = load_map_file(bundled_map_path("room"));
  EXPECT_EQ(map.width_cells(), 100);
  EXPECT_EQ(map.height_cells(), 100);
  ASSERT_EQ(map.entry_points().size(), 2u);
  EXPECT_EQ(map.entry_points()[0], (WorldPoint{-3, -3}));
  EXPECT_EQ(map.entry_points()[1], (WorldPoint{0, 3}));
  EXPECT_LT(map.total_free_area(), 100.0);
  EXPECT_GT(map.total_free_area(), 90.0);
}

TEST(BundledMaps, OfficeAreaInRange) {
  const GroundTruthMap map = load_map_file(bundled_map_path("office"));
  const double expected = static_cast<double>(map.free_cell_count()) * 0.1 * 0.1;
  EXPECT_DOUBLE_EQ(free_area(map), expected);
  EXPECT_GE(free_area(map), 180.0);
  EXPECT_LE(free_area(map), 205.0);
}

TEST(BundledMaps, AreasWithinTenPercentOfNominal) {
  const std::pair<const char*, double> nominal[] = {{"room", 100},   {"apartment", 100},   {"office", 205},
                                                    {"hallway", 342}, {"maze_house", 400}, {"school", 4500}};
  for (const auto& [name, area] : nominal) {
    const GroundTruthMap map = load_map_file(bundled_map_path(name));
    EXPECT_GE(map.total_free_area(), 0.9 * area) << name;
    EXPECT_LE(map.total_free_area(), 1.1 * area) << name;
  }
}

TEST(BundledMaps, SerializationRoundTrip) {
  for (const char* name : kBundled) {
    const GroundTruthMap map = load_map_file(bundled_map_path(name));
    const GroundTruthMap again = load_map(serialize_map(map));
    EXPECT_EQ(map, again) << name;
    EXPECT_EQ(free_area(map), free_area(again)) << name;
  }
}

TEST(BundledMaps, FreeSpaceConnectedFromEveryEntry) {
  for (const char* name : kBundled) {
    const GroundTruthMap map = load_map_file(bundled_map_path(name));
    EXPECT_TRUE(free_space_connected(map)) << name;
    for (const WorldPoint& e : map.entry_points()) {
      const auto reached = flood_fill_free(map, map.geometry().cell_of(e));
      std::size_t n = 0;
      for (auto v : reached) n += v;
      EXPECT_EQ(n, map.free_cell_count()) << name;
    }
  }
}

TEST(FloodFill, DisconnectedPocketIsDetected) {
  auto rows = box_rows(20, 20);
  for (int c = 0; c < 20; ++c) rows[10][static_cast<std::size_t>(c)] = '#';
  const GroundTruthMap map = map_from_rows(rows, 0.1, {{0.5, 0.5}});
  EXPECT_FALSE(free_space_connected(map));
  const auto reached = flood_fill_free(map, map.geometry().cell_of({0.5, 0.5}));
  std::size_t n = 0;
  for (auto v : reached) n += v;
  EXPECT_EQ(n, 18u * 8u);  // the lower half below the dividing wall
}

TEST(DistanceToObstacle, MatchesAnalyticWallDistance) {
  const GroundTruthMap map = map_from_rows(box_rows(40, 40), 0.1, {{2.0, 2.0}});
  // Inner faces of the wall ring sit at 0.1 and 3.9.
  EXPECT_NEAR(distance_to_nearest_obstacle(map, {2.0, 0.35}, 1.0), 0.25, 1e-12);
  EXPECT_NEAR(distance_to_nearest_obstacle(map, {3.5, 2.0}, 1.0), 0.4, 1e-12);
  EXPECT_NEAR(distance_to_nearest_obstacle(map, {2.0, 2.0}, 1.0), 1.0, 1e-12);
  EXPECT_NEAR(distance_to_nearest_obstacle(map, {0.4, 0.5}, 1.0), 0.3, 1e-12);
}

TEST(Generator, RoomSeedOne) {
  const GroundTruthMap map = generate_environment(EnvironmentCategory::Room, 1);
  EXPECT_NEAR(map.geometry().max_x() - map.geometry().min_x(), 10.0, 1e-9);
  EXPECT_NEAR(map.geometry().max_y() - map.geometry().min_y(), 10.0, 1e-9);
  EXPECT_LE(interior_obstacle_count(map), 2u);
  EXPECT_TRUE(free_space_connected(map));
}

TEST(Generator, SchoolSeedSevenHasRooms) {
  const GroundTruthMap map = generate_environment(EnvironmentCategory::School, 7);
  EXPECT_NEAR(map.geometry().max_x() - map.geometry().min_x(), 70.0, 1e-9);
  EXPECT_NEAR(map.geometry().max_y() - map.geometry().min_y(), 70.0, 1e-9);
  EXPECT_GE(count_rooms(map, 0.65), 8u);  // closes the 1.2 m doorways
  EXPECT_TRUE(free_space_connected(map));
}

TEST(Generator, DeterministicPerSeed) {
  for (auto cat : {EnvironmentCategory::Room, EnvironmentCategory::Apartment, EnvironmentCategory::Office,
                   EnvironmentCategory::Hallway, EnvironmentCategory::MazeHouse}) {
    const GroundTruthMap a = generate_environment(cat, 42);
    const GroundTruthMap b = generate_environment(cat, 42);
    EXPECT_EQ(serialize_map(a), serialize_map(b)) << category_name(cat);
    EXPECT_TRUE(free_space_connected(a)) << category_name(cat);
  }
}

TEST(Generator, CategoryNamesRoundTrip) {
  for (auto cat : {EnvironmentCategory::Room, EnvironmentCategory::Apartment, EnvironmentCategory::Office,
                   EnvironmentCategory::Hallway, EnvironmentCategory::MazeHouse, EnvironmentCategory::School}) {
    EXPECT_EQ(parse_category(category_name(cat)), cat);
  }
  EXPECT_FALSE(parse_category("garage").has_value());
}

TEST(CountRooms, TwoRoomsJoinedByNarrowDoor) {
  auto rows = box_rows(60, 30);
  for (int r = 0; r < 30; ++r) rows[static_cast<std::size_t>(r)][30] = '#';
  rows[15][30] = '.';
  rows[16][30] = '.';
  rows[17][30] = '.';
  const GroundTruthMap map = map_from_rows(rows, 0.1, {{1.0, 1.5}});
  EXPECT_EQ(count_rooms(map, 0.3, 0.5), 2u);
}

}  // namespace
}  // namespace explore
