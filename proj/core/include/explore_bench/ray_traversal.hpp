#pragma once

#include <cmath>
#include <limits>

#include "explore_bench/geometry.hpp"

namespace explore {

/// Walks the cells pierced by the ray start + t * (dx, dy), t in [0, max_t],
/// in order (Amanatides & Woo). (dx, dy) must be a unit vector.
///
/// The visitor is called as visit(cell, t_enter, t_exit) and returns false to
/// stop. t_exit is clamped to max_t. On exact corner crossings the x step is
/// taken first, so diagonal gaps between occupied cells do not leak.
///
/// Returns without visiting anything if start lies outside the grid; stops when
/// the ray leaves the grid.
template <class Visitor>
void traverse_ray(const GridGeometry& grid, WorldPoint start, double dx, double dy, double max_t,
                  Visitor&& visit) {
  GridCell cell = grid.cell_of(start);
  if (!grid.in_bounds(cell)) return;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double res = grid.resolution();
  const WorldPoint o = grid.origin();

  const int step_c = dx > 0.0 ? 1 : (dx < 0.0 ? -1 : 0);
  const int step_r = dy > 0.0 ? 1 : (dy < 0.0 ? -1 : 0);

  double t_max_x = kInf;
  double t_max_y = kInf;
  double t_delta_x = kInf;
  double t_delta_y = kInf;
  if (step_c != 0) {
    const double boundary = o.x + (cell.col + (step_c > 0 ? 1 : 0)) * res;
    t_max_x = (boundary - start.x) / dx;
    t_delta_x = res / std::abs(dx);
  }
  if (step_r != 0) {
    const double boundary = o.y + (cell.row + (step_r > 0 ? 1 : 0)) * res;
    t_max_y = (boundary - start.y) / dy;
    t_delta_y = res / std::abs(dy);
  }

  double t_enter = 0.0;
  while (true) {
    const double t_next = std::min(t_max_x, t_max_y);
    const double t_exit = std::min(t_next, max_t);
    if (!visit(cell, t_enter, t_exit)) return;
    if (t_next >= max_t) return;
    if (t_max_x <= t_max_y) {
      cell.col += step_c;
      t_max_x += t_delta_x;
    } else {
      cell.row += step_r;
      t_max_y += t_delta_y;
    }
    if (!grid.in_bounds(cell)) return;
    t_enter = t_next;
  }
}

}  // namespace explore
