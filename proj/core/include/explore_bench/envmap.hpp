#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "explore_bench/geometry.hpp"

namespace explore {

enum class Occupancy : std::uint8_t { Free = 0, Occupied = 1 };

class MapParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MapValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Minimum distance an entry point keeps from any occupied cell (robot clearance).
inline constexpr double kDefaultEntryClearance = 0.26;

/// The true environment. Immutable once constructed; safe to share between
/// concurrently running missions.
class GroundTruthMap {
 public:
  GroundTruthMap() = default;

  /// Validates and builds a map. Throws MapValidationError if the boundary ring
  /// is not fully occupied or an entry point is in (or too close to) an obstacle.
  GroundTruthMap(std::string name, GridGeometry geometry, std::vector<Occupancy> cells,
                 std::vector<WorldPoint> entry_points,
                 double entry_clearance = kDefaultEntryClearance);

  const std::string& name() const { return name_; }
  const GridGeometry& geometry() const { return geometry_; }
  const std::vector<WorldPoint>& entry_points() const { return entry_points_; }
  std::span<const Occupancy> cells() const { return cells_; }

  int width_cells() const { return geometry_.width(); }
  int height_cells() const { return geometry_.height(); }
  double resolution() const { return geometry_.resolution(); }

  Occupancy at(GridCell c) const { return cells_[geometry_.index_of(c)]; }
  Occupancy at(std::size_t index) const { return cells_[index]; }
  bool is_free(GridCell c) const { return geometry_.in_bounds(c) && at(c) == Occupancy::Free; }
  bool is_free(WorldPoint p) const { return is_free(geometry_.cell_of(p)); }

  std::size_t free_cell_count() const { return free_cells_; }
  /// Count(Free) x resolution^2.
  double total_free_area() const { return total_free_area_; }

  bool operator==(const GroundTruthMap& other) const;

 private:
  std::string name_;
  GridGeometry geometry_;
  std::vector<Occupancy> cells_;
  std::vector<WorldPoint> entry_points_;
  std::size_t free_cells_ = 0;
  double total_free_area_ = 0.0;
};

/// Parses the text map format:
///   name <label>
///   resolution <m>
///   origin <x> <y>
///   entries <x1,y1> <x2,y2> ...
///   <height rows of width chars, '#' occupied, '.' free; first row is the top (max y)>
GroundTruthMap load_map(std::string_view text);
GroundTruthMap load_map_file(const std::string& path);
std::string serialize_map(const GroundTruthMap& map);

double free_area(const GroundTruthMap& map);

/// Euclidean distance from p to the nearest point of any occupied cell, searched
/// within max_radius; returns max_radius when nothing closer exists.
double distance_to_nearest_obstacle(const GroundTruthMap& map, WorldPoint p, double max_radius);

/// Free cells reachable from `seed` through 8-connected free cells.
std::vector<std::uint8_t> flood_fill_free(const GroundTruthMap& map, GridCell seed);

/// True if every free cell is reachable from every entry point.
bool free_space_connected(const GroundTruthMap& map);

enum class EnvironmentCategory { Room, Apartment, Office, Hallway, MazeHouse, School };

std::optional<EnvironmentCategory> parse_category(std::string_view name);
std::string_view category_name(EnvironmentCategory category);

/// Extent of a category in meters (width x height).
struct CategorySize {
  double width_m;
  double height_m;
};
CategorySize category_size(EnvironmentCategory category);

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Seeded procedural stand-in for the bundled worlds. Deterministic in
/// (category, seed); free space is connected from every entry point.
GroundTruthMap generate_environment(EnvironmentCategory category, std::uint64_t seed,
                                    double resolution = 0.1);

/// Number of rooms: connected components of free space after eroding it by
/// `door_clearance` meters (doorways narrower than twice that get closed).
std::size_t count_rooms(const GroundTruthMap& map, double door_clearance,
                        double min_room_area = 2.0);

}  // namespace explore
