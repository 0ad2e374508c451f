#include "explore_bench/mapping.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <stdexcept>

namespace explore {

BeliefMap::BeliefMap(GridGeometry geometry, MappingParams params)
    : geometry_(geometry),
      params_(params),
      log_odds_(geometry.cell_count(), 0.0),
      classes_(geometry.cell_count(), CellClass::Unknown),
      free_stamp_(geometry.cell_count(), 0),
      hit_stamp_(geometry.cell_count(), 0) {
  if (!(params_.free_threshold < 0.0 && params_.occupied_threshold > 0.0)) {
    throw std::invalid_argument("mapping thresholds must satisfy free < 0 < occupied");
  }
  if (!(params_.log_odds_min < params_.free_threshold &&
        params_.log_odds_max > params_.occupied_threshold)) {
    throw std::invalid_argument("log-odds clamps must enclose the thresholds");
  }
}

CellClass BeliefMap::classify_value(double l) const {
  if (l <= params_.free_threshold) return CellClass::Free;
  if (l >= params_.occupied_threshold) return CellClass::Occupied;
  return CellClass::Unknown;
}

void BeliefMap::apply(std::size_t index, double delta, ScanUpdate& update) {
  const double next = std::clamp(log_odds_[index] + delta, params_.log_odds_min, params_.log_odds_max);
  log_odds_[index] = next;
  const CellClass before = classes_[index];
  const CellClass after = classify_value(next);
  if (before == after) return;
  classes_[index] = after;
  if (before == CellClass::Unknown) ++known_cells_;
  if (after == CellClass::Unknown) --known_cells_;
  if (before == CellClass::Free) --free_cells_;
  if (after == CellClass::Free) ++free_cells_;
  update.changes.push_back({index, before, after});
}

ScanUpdate BeliefMap::integrate_scan(const LidarScan& scan) {
  ScanUpdate update;
  if (++stamp_ == 0) {
    // Stamp wrapped: reset markers.
    std::fill(free_stamp_.begin(), free_stamp_.end(), 0);
    std::fill(hit_stamp_.begin(), hit_stamp_.end(), 0);
    stamp_ = 1;
  }
  touched_.clear();
  hits_.clear();
  const std::uint32_t stamp = stamp_;
  for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
    trace_beam(
        geometry_, scan.pose.position, scan.beam_angle(i), scan.ranges[i], scan.is_return(i),
        [&](GridCell c) {
          const std::size_t idx = geometry_.index_of(c);
          if (free_stamp_[idx] != stamp) {
            free_stamp_[idx] = stamp;
            touched_.push_back(idx);
          }
        },
        [&](GridCell c) {
          const std::size_t idx = geometry_.index_of(c);
          if (hit_stamp_[idx] != stamp) {
            hit_stamp_[idx] = stamp;
            hits_.push_back(idx);
          }
        });
  }
  for (std::size_t idx : touched_) {
    if (hit_stamp_[idx] != stamp) apply(idx, params_.free_increment, update);
  }
  for (std::size_t idx : hits_) apply(idx, params_.occupied_increment, update);
  update.cells_touched = touched_.size() + hits_.size();
  return update;
}

void BeliefMap::set_log_odds(GridCell c, double value) {
  ScanUpdate discard;
  const std::size_t idx = geometry_.index_of(c);
  apply(idx, value - log_odds_[idx], discard);
}

void BeliefMap::set_class(GridCell c, CellClass cls) {
  switch (cls) {
    case CellClass::Unknown: set_log_odds(c, 0.0); break;
    case CellClass::Free: set_log_odds(c, params_.log_odds_min); break;
    case CellClass::Occupied: set_log_odds(c, params_.log_odds_max); break;
  }
}

double explored_area(const BeliefMap& belief) { return belief.explored_area(); }

std::string belief_to_pgm(const BeliefMap& belief) {
  const GridGeometry& g = belief.geometry();
  std::string out = fmt::format("P2\n{} {}\n255\n", g.width(), g.height());
  out.reserve(out.size() + g.cell_count() * 4);
  for (int r = g.height() - 1; r >= 0; --r) {
    for (int c = 0; c < g.width(); ++c) {
      int value = 205;
      switch (belief.classify(GridCell{r, c})) {
        case CellClass::Occupied: value = 0; break;
        case CellClass::Free: value = 254; break;
        case CellClass::Unknown: value = 205; break;
      }
      if (c > 0) out += ' ';
      out += fmt::format("{}", value);
    }
    out += '\n';
  }
  return out;
}

}  // namespace explore
