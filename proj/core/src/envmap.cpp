#include "explore_bench/envmap.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>

#include "explore_bench/distance_field.hpp"

namespace explore {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_double(std::string_view token, std::string_view what) {
  double value = 0.0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw MapParseError(fmt::format("invalid number '{}' in {}", token, what));
  }
  return value;
}

std::string_view expect_key(std::string_view line, std::string_view key, std::size_t lineno) {
  if (line.size() < key.size() || line.substr(0, key.size()) != key ||
      (line.size() > key.size() && line[key.size()] != ' ')) {
    throw MapParseError(fmt::format("line {}: expected '{}' header", lineno, key));
  }
  return line.size() > key.size() ? line.substr(key.size() + 1) : std::string_view{};
}

}  // namespace

GroundTruthMap::GroundTruthMap(std::string name, GridGeometry geometry,
                               std::vector<Occupancy> cells, std::vector<WorldPoint> entry_points,
                               double entry_clearance)
    : name_(std::move(name)),
      geometry_(geometry),
      cells_(std::move(cells)),
      entry_points_(std::move(entry_points)) {
  if (cells_.size() != geometry_.cell_count()) {
    throw MapValidationError("cell array does not match map dimensions");
  }
  const int w = geometry_.width();
  const int h = geometry_.height();
  for (int c = 0; c < w; ++c) {
    if (at(GridCell{0, c}) != Occupancy::Occupied || at(GridCell{h - 1, c}) != Occupancy::Occupied) {
      throw MapValidationError("open boundary: outer ring must be fully occupied");
    }
  }
  for (int r = 0; r < h; ++r) {
    if (at(GridCell{r, 0}) != Occupancy::Occupied || at(GridCell{r, w - 1}) != Occupancy::Occupied) {
      throw MapValidationError("open boundary: outer ring must be fully occupied");
    }
  }
  free_cells_ = static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), Occupancy::Free));
  total_free_area_ = static_cast<double>(free_cells_) * geometry_.cell_area();

  for (const WorldPoint& e : entry_points_) {
    if (!is_free(e)) {
      throw MapValidationError(fmt::format("entry point ({}, {}) is not in free space", e.x, e.y));
    }
    const double d = distance_to_nearest_obstacle(*this, e, entry_clearance + geometry_.resolution());
    if (d < entry_clearance) {
      throw MapValidationError(fmt::format("entry point ({}, {}) is {:.3f} m from an obstacle (< {} m)",
                                           e.x, e.y, d, entry_clearance));
    }
  }
}

bool GroundTruthMap::operator==(const GroundTruthMap& other) const {
  return name_ == other.name_ && geometry_ == other.geometry_ && cells_ == other.cells_ &&
         entry_points_ == other.entry_points_;
}

GroundTruthMap load_map(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.size() < 5) throw MapParseError("map file truncated: need 4 header lines and rows");

  std::string name{expect_key(lines[0], "name", 1)};
  if (name.empty()) throw MapParseError("line 1: empty map name");

  const auto res_tokens = split_ws(expect_key(lines[1], "resolution", 2));
  if (res_tokens.size() != 1) throw MapParseError("line 2: expected one resolution value");
  const double resolution = parse_double(res_tokens[0], "resolution");
  if (!(resolution > 0.0)) throw MapParseError("line 2: resolution must be positive");

  const auto origin_tokens = split_ws(expect_key(lines[2], "origin", 3));
  if (origin_tokens.size() != 2) throw MapParseError("line 3: expected 'origin <x> <y>'");
  const WorldPoint origin{parse_double(origin_tokens[0], "origin"),
                          parse_double(origin_tokens[1], "origin")};

  std::vector<WorldPoint> entries;
  for (std::string_view tok : split_ws(expect_key(lines[3], "entries", 4))) {
    const std::size_t comma = tok.find(',');
    if (comma == std::string_view::npos) {
      throw MapParseError(fmt::format("line 4: entry '{}' is not of the form x,y", tok));
    }
    entries.push_back({parse_double(tok.substr(0, comma), "entry"),
                       parse_double(tok.substr(comma + 1), "entry")});
  }

  std::vector<std::string_view> rows(lines.begin() + 4, lines.end());
  // A single trailing newline yields one empty final line.
  if (!rows.empty() && rows.back().empty()) rows.pop_back();
  if (rows.empty()) throw MapParseError("map has no grid rows");
  const std::size_t width = rows.front().size();
  if (width == 0) throw MapParseError("line 5: empty grid row");
  const std::size_t height = rows.size();

  std::vector<Occupancy> cells(width * height);
  for (std::size_t i = 0; i < height; ++i) {
    const std::string_view row = rows[i];
    if (row.size() != width) {
      throw MapParseError(
          fmt::format("line {}: row has {} cells, expected {}", i + 5, row.size(), width));
    }
    const std::size_t grid_row = height - 1 - i;
    for (std::size_t c = 0; c < width; ++c) {
      Occupancy o;
      switch (row[c]) {
        case '#': o = Occupancy::Occupied; break;
        case '.': o = Occupancy::Free; break;
        default:
          throw MapParseError(fmt::format("line {}: invalid cell character at column {}", i + 5, c + 1));
      }
      cells[grid_row * width + c] = o;
    }
  }
  GridGeometry geometry(static_cast<int>(width), static_cast<int>(height), resolution, origin);
  return GroundTruthMap(std::move(name), geometry, std::move(cells), std::move(entries));
}

GroundTruthMap load_map_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MapParseError(fmt::format("cannot open map file '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_map(ss.str());
}

std::string serialize_map(const GroundTruthMap& map) {
  const GridGeometry& g = map.geometry();
  std::string out;
  out.reserve(g.cell_count() + static_cast<std::size_t>(g.height()) + 128);
  out += fmt::format("name {}\n", map.name());
  out += fmt::format("resolution {}\n", g.resolution());
  out += fmt::format("origin {} {}\n", g.origin().x, g.origin().y);
  out += "entries";
  for (const WorldPoint& e : map.entry_points()) out += fmt::format(" {},{}", e.x, e.y);
  out += '\n';
  for (int r = g.height() - 1; r >= 0; --r) {
    for (int c = 0; c < g.width(); ++c) {
      out += map.at(GridCell{r, c}) == Occupancy::Occupied ? '#' : '.';
    }
    out += '\n';
  }
  return out;
}

double free_area(const GroundTruthMap& map) {
  return static_cast<double>(map.free_cell_count()) * map.geometry().cell_area();
}

double distance_to_nearest_obstacle(const GroundTruthMap& map, WorldPoint p, double max_radius) {
  const GridGeometry& g = map.geometry();
  const double res = g.resolution();
  const GridCell center = g.cell_of(p);
  const int reach = static_cast<int>(std::ceil(max_radius / res)) + 1;
  double best = max_radius;
  for (int r = center.row - reach; r <= center.row + reach; ++r) {
    for (int c = center.col - reach; c <= center.col + reach; ++c) {
      const GridCell cell{r, c};
      if (g.in_bounds(cell) && map.at(cell) != Occupancy::Occupied) continue;
      // Out-of-bounds space counts as occupied.
      const double x0 = g.origin().x + c * res;
      const double y0 = g.origin().y + r * res;
      const double dx = std::max({x0 - p.x, 0.0, p.x - (x0 + res)});
      const double dy = std::max({y0 - p.y, 0.0, p.y - (y0 + res)});
      best = std::min(best, std::hypot(dx, dy));
    }
  }
  return best;
}

std::vector<std::uint8_t> flood_fill_free(const GroundTruthMap& map, GridCell seed) {
  const GridGeometry& g = map.geometry();
  std::vector<std::uint8_t> reached(g.cell_count(), 0);
  if (!map.is_free(seed)) return reached;
  std::deque<GridCell> queue{seed};
  reached[g.index_of(seed)] = 1;
  while (!queue.empty()) {
    const GridCell c = queue.front();
    queue.pop_front();
    for (int k = 0; k < 8; ++k) {
      const GridCell n{c.row + kNeighborDr[k], c.col + kNeighborDc[k]};
      if (!map.is_free(n)) continue;
      const std::size_t idx = g.index_of(n);
      if (reached[idx]) continue;
      reached[idx] = 1;
      queue.push_back(n);
    }
  }
  return reached;
}

bool free_space_connected(const GroundTruthMap& map) {
  for (const WorldPoint& e : map.entry_points()) {
    const auto reached = flood_fill_free(map, map.geometry().cell_of(e));
    const auto count = static_cast<std::size_t>(std::count(reached.begin(), reached.end(), 1));
    if (count != map.free_cell_count()) return false;
  }
  return true;
}

std::size_t count_rooms(const GroundTruthMap& map, double door_clearance, double min_room_area) {
  const GridGeometry& g = map.geometry();
  std::vector<std::uint8_t> occupied(g.cell_count());
  for (std::size_t i = 0; i < occupied.size(); ++i) occupied[i] = map.at(i) == Occupancy::Occupied;
  const auto dist = euclidean_distance_transform(g.width(), g.height(), occupied);
  const double limit = door_clearance / g.resolution();

  std::vector<std::uint8_t> seen(g.cell_count(), 0);
  std::size_t rooms = 0;
  const auto min_cells = static_cast<std::size_t>(min_room_area / g.cell_area());
  for (std::size_t start = 0; start < seen.size(); ++start) {
    if (seen[start] || dist[start] <= limit) continue;
    std::size_t size = 0;
    std::deque<std::size_t> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      const GridCell c = g.cell_at(queue.front());
      queue.pop_front();
      ++size;
      for (int k = 0; k < 8; ++k) {
        const GridCell n{c.row + kNeighborDr[k], c.col + kNeighborDc[k]};
        if (!g.in_bounds(n)) continue;
        const std::size_t idx = g.index_of(n);
        if (seen[idx] || dist[idx] <= limit) continue;
        seen[idx] = 1;
        queue.push_back(idx);
      }
    }
    if (size >= min_cells) ++rooms;
  }
  return rooms;
}

}  // namespace explore
