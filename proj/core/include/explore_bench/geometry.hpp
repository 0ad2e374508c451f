#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numbers>

namespace explore {

/// A position in the world frame, meters.
struct WorldPoint {
  double x = 0.0;
  double y = 0.0;

  auto operator<=>(const WorldPoint&) const = default;
};

inline double distance(WorldPoint a, WorldPoint b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Grid index. Row grows with +y, column grows with +x.
struct GridCell {
  int row = 0;
  int col = 0;

  auto operator<=>(const GridCell&) const = default;
};

/// Normalizes an angle to (-pi, pi].
inline double normalize_angle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

/// Shape and placement of a rectangular grid. Cell (0,0) covers
/// [origin.x, origin.x + resolution) x [origin.y, origin.y + resolution).
class GridGeometry {
 public:
  GridGeometry() = default;
  GridGeometry(int width, int height, double resolution, WorldPoint origin);

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }
  WorldPoint origin() const { return origin_; }
  std::size_t cell_count() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  double cell_area() const { return resolution_ * resolution_; }

  bool in_bounds(GridCell c) const {
    return c.row >= 0 && c.col >= 0 && c.row < height_ && c.col < width_;
  }
  bool contains(WorldPoint p) const { return in_bounds(cell_of(p)); }

  GridCell cell_of(WorldPoint p) const {
    return {static_cast<int>(std::floor((p.y - origin_.y) / resolution_)),
            static_cast<int>(std::floor((p.x - origin_.x) / resolution_))};
  }
  WorldPoint center_of(GridCell c) const {
    return {origin_.x + (c.col + 0.5) * resolution_, origin_.y + (c.row + 0.5) * resolution_};
  }
  std::size_t index_of(GridCell c) const {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.col);
  }
  GridCell cell_at(std::size_t index) const {
    return {static_cast<int>(index / static_cast<std::size_t>(width_)),
            static_cast<int>(index % static_cast<std::size_t>(width_))};
  }

  double min_x() const { return origin_.x; }
  double min_y() const { return origin_.y; }
  double max_x() const { return origin_.x + width_ * resolution_; }
  double max_y() const { return origin_.y + height_ * resolution_; }

  bool operator==(const GridGeometry&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  double resolution_ = 1.0;
  WorldPoint origin_{};
};

/// 8-neighborhood offsets, cardinals first.
inline constexpr int kNeighborDr[8] = {1, -1, 0, 0, 1, 1, -1, -1};
inline constexpr int kNeighborDc[8] = {0, 0, 1, -1, 1, -1, 1, -1};

enum class Connectivity : std::uint8_t { Four = 4, Eight = 8 };

inline int neighbor_count(Connectivity c) { return static_cast<int>(c); }

}  // namespace explore
