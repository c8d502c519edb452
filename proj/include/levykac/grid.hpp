#pragma once

#include <cstddef>
#include <vector>

#include "levykac/errors.hpp"

namespace levykac {

// Uniform periodic grid on [-L, L)^dim with N points per axis (power of two).
// Nodes x_j = -L + 2Lj/N; discrete frequencies xi_k = pi k / L for
// k in [-N/2, N/2).
struct Grid {
  int dim = 1;
  double half_width = 20.0;  // L
  int points_per_axis = 256; // N

  Grid() = default;
  Grid(int dim_, double L, int N) : dim(dim_), half_width(L), points_per_axis(N) {
    validate();
  }

  void validate() const {
    if (dim != 1 && dim != 2) throw parameter_error("Grid: dim must be 1 or 2");
    if (!(half_width > 0)) throw parameter_error("Grid: half_width must be > 0");
    const int N = points_per_axis;
    if (N < 64 || (N & (N - 1)) != 0)
      throw parameter_error("Grid: N must be a power of two >= 64");
  }

  std::size_t total_points() const {
    std::size_t n = static_cast<std::size_t>(points_per_axis);
    return dim == 1 ? n : n * n;
  }

  // node weight for the L2 grid measure
  double measure() const {
    const double h = 2.0 * half_width / points_per_axis;
    return dim == 1 ? h : h * h;
  }

  double node(int j) const {
    return -half_width + 2.0 * half_width * j / points_per_axis;
  }

  // signed frequency for FFT bin index j in [0, N)
  double frequency(int j) const {
    const int N = points_per_axis;
    const int k = j < N / 2 ? j : j - N;
    return M_PI * k / half_width;
  }

  std::vector<double> nodes() const {
    std::vector<double> xs(points_per_axis);
    for (int j = 0; j < points_per_axis; ++j) xs[j] = node(j);
    return xs;
  }

  // dim = 2 index helpers (row-major: index = jy * N + jx)
  double node_x(std::size_t idx) const {
    return node(static_cast<int>(idx % static_cast<std::size_t>(points_per_axis)));
  }
  double node_y(std::size_t idx) const {
    return node(static_cast<int>(idx / static_cast<std::size_t>(points_per_axis)));
  }
};

}  // namespace levykac
