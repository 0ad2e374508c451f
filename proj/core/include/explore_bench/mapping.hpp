#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "explore_bench/geometry.hpp"
#include "explore_bench/ray_traversal.hpp"
#include "explore_bench/sensing.hpp"

namespace explore {

enum class CellClass : std::uint8_t { Unknown = 0, Free = 1, Occupied = 2 };

/// Log-odds update rule. Free iff l <= free_threshold, Occupied iff l >= occupied_threshold.
struct MappingParams {
  double free_increment = -0.4;
  double occupied_increment = 0.85;
  double log_odds_min = -4.0;
  double log_odds_max = 4.0;
  double free_threshold = -0.4;
  double occupied_threshold = 0.5;
};

struct CellChange {
  std::size_t index;
  CellClass before;
  CellClass after;
};

/// Cells whose classification changed during one integrate_scan call.
struct ScanUpdate {
  std::vector<CellChange> changes;
  std::size_t cells_touched = 0;
};

/// The robot's occupancy belief, built from scans at known poses.
class BeliefMap {
 public:
  BeliefMap() = default;
  BeliefMap(GridGeometry geometry, MappingParams params = {});

  const GridGeometry& geometry() const { return geometry_; }
  const MappingParams& params() const { return params_; }

  CellClass classify(GridCell c) const { return classes_[geometry_.index_of(c)]; }
  CellClass classify(std::size_t index) const { return classes_[index]; }
  /// Out-of-bounds cells report Unknown.
  CellClass classify_safe(GridCell c) const {
    return geometry_.in_bounds(c) ? classify(c) : CellClass::Unknown;
  }
  CellClass classify(WorldPoint p) const { return classify_safe(geometry_.cell_of(p)); }
  double log_odds(GridCell c) const { return log_odds_[geometry_.index_of(c)]; }
  std::span<const CellClass> classes() const { return classes_; }

  /// Per scan each cell receives at most one update: the occupied increment if any
  /// beam ended in it, else the free increment if any beam crossed it.
  ScanUpdate integrate_scan(const LidarScan& scan);

  /// Overwrites a cell's log-odds (clamped) and reclassifies it.
  void set_log_odds(GridCell c, double value);
  /// Convenience for constructing beliefs: saturates the cell to the given class.
  void set_class(GridCell c, CellClass cls);

  std::size_t known_cell_count() const { return known_cells_; }
  std::size_t free_cell_count() const { return free_cells_; }
  /// Non-Unknown cells x resolution^2.
  double explored_area() const { return static_cast<double>(known_cells_) * geometry_.cell_area(); }
  double free_explored_area() const { return static_cast<double>(free_cells_) * geometry_.cell_area(); }

  bool operator==(const BeliefMap& other) const {
    return geometry_ == other.geometry_ && log_odds_ == other.log_odds_;
  }

 private:
  CellClass classify_value(double l) const;
  void apply(std::size_t index, double delta, ScanUpdate& update);

  GridGeometry geometry_;
  MappingParams params_;
  std::vector<double> log_odds_;
  std::vector<CellClass> classes_;
  std::vector<std::uint32_t> free_stamp_;
  std::vector<std::uint32_t> hit_stamp_;
  std::vector<std::size_t> touched_;
  std::vector<std::size_t> hits_;
  std::uint32_t stamp_ = 0;
  std::size_t known_cells_ = 0;
  std::size_t free_cells_ = 0;
};

double explored_area(const BeliefMap& belief);

/// Cells a beam marks free and the cell it marks hit (if the beam returned).
/// Shared by the mapper and by tests.
template <class FreeFn, class HitFn>
void trace_beam(const GridGeometry& grid, WorldPoint from, double angle, double range, bool is_return,
                FreeFn&& on_free, HitFn&& on_hit);

/// Plain P2 grayscale dump: 0 occupied, 254 free, 205 unknown; top row is max y.
std::string belief_to_pgm(const BeliefMap& belief);

// Implementation.

template <class FreeFn, class HitFn>
void trace_beam(const GridGeometry& grid, WorldPoint from, double angle, double range, bool is_return,
                FreeFn&& on_free, HitFn&& on_hit) {
  constexpr double kEps = 1e-9;
  traverse_ray(grid, from, std::cos(angle), std::sin(angle), range + 2.0 * kEps,
               [&](GridCell c, double t_enter, double t_exit) {
                 // Corner touches carry no length; the sensor ignores them too.
                 if (t_exit - t_enter <= kEps) return true;
                 if (t_exit > range + kEps) {
                   // Cell containing the beam endpoint.
                   if (is_return) {
                     on_hit(c);
                   } else {
                     on_free(c);
                   }
                   return false;
                 }
                 on_free(c);
                 return true;
               });
}

}  // namespace explore
