#pragma once

#include <string>
#include <vector>

#include <fmt/format.h>

#include "explore_bench/envmap.hpp"
#include "explore_bench/mapping.hpp"

namespace explore::testing {

inline std::string maps_dir() { return EXPLORE_BENCH_TEST_MAPS_DIR; }
inline std::string bundled_map_path(const std::string& name) { return maps_dir() + "/" + name + ".map"; }

/// Ground truth from ASCII rows ('#' occupied, '.' free); the first row is the top (max y).
inline GroundTruthMap map_from_rows(const std::vector<std::string>& rows, double resolution,
                                    std::vector<WorldPoint> entries, WorldPoint origin = {0.0, 0.0}) {
  std::string text = fmt::format("name test\nresolution {}\norigin {} {}\nentries", resolution, origin.x, origin.y);
  for (const WorldPoint& e : entries) text += fmt::format(" {},{}", e.x, e.y);
  text += '\n';
  for (const std::string& r : rows) text += r + '\n';
  return load_map(text);
}

/// A closed rectangular room of w x h cells with a one-cell wall ring.
inline std::vector<std::string> box_rows(int w, int h) {
  std::vector<std::string> rows(static_cast<std::size_t>(h), std::string(static_cast<std::size_t>(w), '.'));
  for (int c = 0; c < w; ++c) {
    rows.front()[static_cast<std::size_t>(c)] = '#';
    rows.back()[static_cast<std::size_t>(c)] = '#';
  }
  for (auto& r : rows) {
    r.front() = '#';
    r.back() = '#';
  }
  return rows;
}

/// Belief from ASCII rows ('?' unknown, '.' free, '#' occupied); the first row is the top.
inline BeliefMap belief_from_rows(const std::vector<std::string>& rows, double resolution = 0.1,
                                  WorldPoint origin = {0.0, 0.0}) {
  const int h = static_cast<int>(rows.size());
  const int w = static_cast<int>(rows.front().size());
  BeliefMap belief(GridGeometry(w, h, resolution, origin));
  for (int i = 0; i < h; ++i) {
    const int row = h - 1 - i;
    for (int c = 0; c < w; ++c) {
      const char ch = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (ch == '.') belief.set_class({row, c}, CellClass::Free);
      if (ch == '#') belief.set_class({row, c}, CellClass::Occupied);
    }
  }
  return belief;
}

/// Belief that matches the ground truth exactly in every cell.
inline BeliefMap fully_known_belief(const GroundTruthMap& map) {
  BeliefMap belief(map.geometry());
  for (std::size_t i = 0; i < map.geometry().cell_count(); ++i) {
    belief.set_class(map.geometry().cell_at(i),
                     map.at(i) == Occupancy::Occupied ? CellClass::Occupied : CellClass::Free);
  }
  return belief;
}

}  // namespace explore::testing
