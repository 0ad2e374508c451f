#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace explore {

/// Exact Euclidean distance transform over a row-major width x height grid.
/// Result holds, per cell, the center-to-center distance in cells to the nearest
/// cell whose `sources` entry is non-zero; +inf when there is none.
std::vector<double> euclidean_distance_transform(int width, int height,
                                                 std::span<const std::uint8_t> sources);

}  // namespace explore
