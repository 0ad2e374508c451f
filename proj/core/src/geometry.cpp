#include "explore_bench/geometry.hpp"

#include <stdexcept>

namespace explore {

GridGeometry::GridGeometry(int width, int height, double resolution, WorldPoint origin)
    : width_(width), height_(height), resolution_(resolution), origin_(origin) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("grid dimensions must be positive");
  if (!(resolution > 0.0)) throw std::invalid_argument("grid resolution must be positive");
}

}  // namespace explore
