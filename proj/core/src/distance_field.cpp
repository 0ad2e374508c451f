#include "explore_bench/distance_field.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace explore {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1D squared distance transform of a sampled function (lower envelope of parabolas).
void transform_1d(const double* f, int n, double* d, int* v, double* z) {
  int k = 0;
  int first = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] < kInf) {
      first = q;
      break;
    }
  }
  if (first < 0) {
    for (int q = 0; q < n; ++q) d[q] = kInf;
    return;
  }
  v[0] = first;
  z[0] = -kInf;
  z[1] = kInf;
  for (int q = first + 1; q < n; ++q) {
    if (!(f[q] < kInf)) continue;
    auto intersect = [&](int p) {
      return ((f[q] + static_cast<double>(q) * q) - (f[p] + static_cast<double>(p) * p)) /
             (2.0 * (q - p));
    };
    double s = intersect(v[k]);
    while (s <= z[k]) {
      --k;
      s = intersect(v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double diff = q - v[k];
    d[q] = diff * diff + f[v[k]];
  }
}

}  // namespace

std::vector<double> euclidean_distance_transform(int width, int height,
                                                 std::span<const std::uint8_t> sources) {
  if (width < 0 || height < 0 ||
      sources.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("distance transform: size mismatch");
  }
  std::vector<double> grid(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) grid[i] = sources[i] ? 0.0 : kInf;

  const int n = std::max(width, height);
  std::vector<double> f(n), d(n), z(n + 1);
  std::vector<int> v(n);

  // Columns.
  for (int c = 0; c < width; ++c) {
    for (int r = 0; r < height; ++r) f[r] = grid[static_cast<std::size_t>(r) * width + c];
    transform_1d(f.data(), height, d.data(), v.data(), z.data());
    for (int r = 0; r < height; ++r) grid[static_cast<std::size_t>(r) * width + c] = d[r];
  }
  // Rows.
  for (int r = 0; r < height; ++r) {
    double* row = grid.data() + static_cast<std::size_t>(r) * width;
    for (int c = 0; c < width; ++c) f[c] = row[c];
    transform_1d(f.data(), width, d.data(), v.data(), z.data());
    for (int c = 0; c < width; ++c) row[c] = d[c];
  }
  for (double& g : grid) g = g < kInf ? std::sqrt(g) : kInf;
  return grid;
}

}  // namespace explore
