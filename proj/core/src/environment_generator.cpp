#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "explore_bench/distance_field.hpp"
#include "explore_bench/envmap.hpp"

namespace explore {
namespace {

struct CategoryInfo {
  EnvironmentCategory category;
  std::string_view name;
  CategorySize size;
};

constexpr std::array<CategoryInfo, 6> kCategories{{
    {EnvironmentCategory::Room, "room", {10.0, 10.0}},
    {EnvironmentCategory::Apartment, "apartment", {10.0, 10.0}},
    {EnvironmentCategory::Office, "office", {20.0, 11.0}},
    {EnvironmentCategory::Hallway, "hallway", {20.0, 22.0}},
    {EnvironmentCategory::MazeHouse, "maze_house", {20.0, 20.0}},
    {EnvironmentCategory::School, "school", {70.0, 70.0}},
}};

enum class CorridorLayout { None, Horizontal, Cross };

struct LayoutParams {
  double min_room_m;
  double wall_m;
  double door_m;
  double corridor_m;
  CorridorLayout corridors;
  int max_boxes;
};

LayoutParams layout_for(EnvironmentCategory c) {
  switch (c) {
    case EnvironmentCategory::Room: return {1000.0, 0.1, 1.0, 0.0, CorridorLayout::None, 2};
    case EnvironmentCategory::Apartment: return {2.5, 0.1, 1.0, 0.0, CorridorLayout::None, 0};
    case EnvironmentCategory::Office: return {3.0, 0.2, 1.0, 2.0, CorridorLayout::Horizontal, 0};
    case EnvironmentCategory::Hallway: return {4.0, 0.2, 1.2, 3.0, CorridorLayout::Horizontal, 0};
    case EnvironmentCategory::MazeHouse: return {2.0, 0.1, 1.0, 0.0, CorridorLayout::None, 0};
    case EnvironmentCategory::School: return {6.0, 0.2, 1.2, 3.0, CorridorLayout::Cross, 0};
  }
  return {1000.0, 0.1, 1.0, 0.0, CorridorLayout::None, 0};
}

// Inclusive cell rectangle.
struct Rect {
  int r0, c0, r1, c1;
  int rows() const { return r1 - r0 + 1; }
  int cols() const { return c1 - c0 + 1; }
};

class Canvas {
 public:
  Canvas(int w, int h) : w_(w), h_(h), cells_(static_cast<std::size_t>(w) * h, Occupancy::Free) {
    fill({0, 0, h - 1, 0}, Occupancy::Occupied);
    fill({0, w - 1, h - 1, w - 1}, Occupancy::Occupied);
    fill({0, 0, 0, w - 1}, Occupancy::Occupied);
    fill({h - 1, 0, h - 1, w - 1}, Occupancy::Occupied);
  }
  void fill(Rect r, Occupancy o) {
    for (int row = std::max(0, r.r0); row <= std::min(h_ - 1, r.r1); ++row) {
      for (int col = std::max(0, r.c0); col <= std::min(w_ - 1, r.c1); ++col) {
        cells_[static_cast<std::size_t>(row) * w_ + col] = o;
      }
    }
  }
  std::vector<Occupancy> take() { return std::move(cells_); }

 private:
  int w_, h_;
  std::vector<Occupancy> cells_;
};

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  if (hi <= lo) return lo;
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

struct Divider {
  Canvas& canvas;
  std::mt19937_64& rng;
  int min_room;
  int wall;
  int door;

  // Recursive division: every split wall gets one doorway, so the rooms form a tree.
  void divide(Rect r) {
    const bool can_h = r.rows() >= 2 * min_room + wall;
    const bool can_v = r.cols() >= 2 * min_room + wall;
    if (!can_h && !can_v) return;
    bool horizontal = can_h && (!can_v || r.rows() > r.cols() ||
                                (r.rows() == r.cols() && (rng() & 1U)));
    if (horizontal) {
      const int at = uniform_int(rng, r.r0 + min_room, r.r1 - min_room - wall + 1);
      canvas.fill({at, r.c0, at + wall - 1, r.c1}, Occupancy::Occupied);
      const int d = uniform_int(rng, r.c0 + 1, std::max(r.c0 + 1, r.c1 - door));
      canvas.fill({at, d, at + wall - 1, d + door - 1}, Occupancy::Free);
      divide({r.r0, r.c0, at - 1, r.c1});
      divide({at + wall, r.c0, r.r1, r.c1});
    } else {
      const int at = uniform_int(rng, r.c0 + min_room, r.c1 - min_room - wall + 1);
      canvas.fill({r.r0, at, r.r1, at + wall - 1}, Occupancy::Occupied);
      const int d = uniform_int(rng, r.r0 + 1, std::max(r.r0 + 1, r.r1 - door));
      canvas.fill({d, at, d + door - 1, at + wall - 1}, Occupancy::Free);
      divide({r.r0, r.c0, r.r1, at - 1});
      divide({r.r0, at + wall, r.r1, r.c1});
    }
  }
};

std::vector<GridCell> pick_entries(const GridGeometry& g, const std::vector<Occupancy>& cells,
                                   std::mt19937_64& rng, double clearance, int count) {
  std::vector<std::uint8_t> occ(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) occ[i] = cells[i] == Occupancy::Occupied;
  const auto dist = euclidean_distance_transform(g.width(), g.height(), occ);
  std::vector<std::size_t> eligible;
  const double limit = clearance / g.resolution();
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (!occ[i] && dist[i] >= limit) eligible.push_back(i);
  }
  std::vector<GridCell> out;
  if (eligible.empty()) return out;
  for (int k = 0; k < count; ++k) {
    const std::size_t pick = rng() % eligible.size();
    out.push_back(g.cell_at(eligible[pick]));
  }
  return out;
}

}  // namespace

std::optional<EnvironmentCategory> parse_category(std::string_view name) {
  for (const auto& info : kCategories) {
    if (info.name == name) return info.category;
  }
  return std::nullopt;
}

std::string_view category_name(EnvironmentCategory category) {
  for (const auto& info : kCategories) {
    if (info.category == category) return info.name;
  }
  return "unknown";
}

CategorySize category_size(EnvironmentCategory category) {
  for (const auto& info : kCategories) {
    if (info.category == category) return info.size;
  }
  return {0.0, 0.0};
}

GroundTruthMap generate_environment(EnvironmentCategory category, std::uint64_t seed,
                                    double resolution) {
  const CategorySize size = category_size(category);
  const int w = static_cast<int>(std::lround(size.width_m / resolution));
  const int h = static_cast<int>(std::lround(size.height_m / resolution));
  const GridGeometry geometry(w, h, resolution, {-size.width_m / 2.0, -size.height_m / 2.0});
  const LayoutParams lp = layout_for(category);
  const auto cells_of = [&](double m) { return std::max(1, static_cast<int>(std::lround(m / resolution))); };

  constexpr int kMaxAttempts = 32;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(category) * 131 +
                        static_cast<std::uint64_t>(attempt));
    Canvas canvas(w, h);
    Divider divider{canvas, rng, cells_of(lp.min_room_m), cells_of(lp.wall_m), cells_of(lp.door_m)};
    const Rect interior{1, 1, h - 2, w - 2};
    const int wall = cells_of(lp.wall_m);
    const int door = cells_of(lp.door_m);
    const int corridor = cells_of(lp.corridor_m);

    std::vector<Rect> zones;
    if (lp.corridors == CorridorLayout::None) {
      zones.push_back(interior);
    } else {
      // Corridor strip(s) through the middle, each zone walled off with one doorway.
      const int mid_r = h / 2 - corridor / 2;
      const Rect low{1, 1, mid_r - wall - 1, w - 2};
      const Rect high{mid_r + corridor + wall, 1, h - 2, w - 2};
      canvas.fill({mid_r - wall, 1, mid_r - 1, w - 2}, Occupancy::Occupied);
      canvas.fill({mid_r + corridor, 1, mid_r + corridor + wall - 1, w - 2}, Occupancy::Occupied);
      std::vector<Rect> halves{low, high};
      if (lp.corridors == CorridorLayout::Cross) {
        const int mid_c = w / 2 - corridor / 2;
        canvas.fill({1, mid_c - wall, h - 2, mid_c - 1}, Occupancy::Occupied);
        canvas.fill({1, mid_c + corridor, h - 2, mid_c + corridor + wall - 1}, Occupancy::Occupied);
        canvas.fill({mid_r, 1, mid_r + corridor - 1, w - 2}, Occupancy::Free);
        canvas.fill({1, mid_c, h - 2, mid_c + corridor - 1}, Occupancy::Free);
        halves.clear();
        for (const Rect& half : {low, high}) {
          halves.push_back({half.r0, half.c0, half.r1, mid_c - wall - 1});
          halves.push_back({half.r0, mid_c + corridor + wall, half.r1, half.c1});
        }
      }
      for (const Rect& z : halves) {
        // Doorway from the zone into the horizontal corridor.
        const bool below = z.r1 < mid_r;
        const int wall_r0 = below ? mid_r - wall : mid_r + corridor;
        const int d = uniform_int(rng, z.c0 + 2, std::max(z.c0 + 2, z.c1 - door - 1));
        canvas.fill({wall_r0, d, wall_r0 + wall - 1, d + door - 1}, Occupancy::Free);
        zones.push_back(z);
      }
    }
    for (const Rect& z : zones) divider.divide(z);

    for (int b = 0, n = uniform_int(rng, 0, lp.max_boxes); b < n; ++b) {
      const int bw = uniform_int(rng, cells_of(0.5), cells_of(1.5));
      const int bh = uniform_int(rng, cells_of(0.5), cells_of(1.5));
      const int margin = cells_of(1.5);
      const int r0 = uniform_int(rng, margin, h - margin - bh);
      const int c0 = uniform_int(rng, margin, w - margin - bw);
      canvas.fill({r0, c0, r0 + bh - 1, c0 + bw - 1}, Occupancy::Occupied);
    }

    std::vector<Occupancy> cells = canvas.take();
    const auto entry_cells = pick_entries(geometry, cells, rng, 1.0, 2);
    if (entry_cells.size() != 2) continue;
    std::vector<WorldPoint> entries;
    for (const GridCell& c : entry_cells) entries.push_back(geometry.center_of(c));

    GroundTruthMap map(fmt::format("{}_{}", category_name(category), seed), geometry,
                       std::move(cells), std::move(entries));
    if (free_space_connected(map)) return map;
  }
  throw GenerationError(fmt::format("could not generate a connected '{}' environment for seed {}",
                                    category_name(category), seed));
}

}  // namespace explore
