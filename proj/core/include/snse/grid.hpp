#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

namespace snse {

/// Uniform lattice on the periodic cube [0,1]^d.
struct Grid {
  int dim = 3;        // 1, 2, or 3
  int points = 16;    // points per axis, even, >= 4

  Grid() = default;
  Grid(int d, int n) : dim(d), points(n) {
    if (d < 1 || d > 3) throw std::invalid_argument("Grid: dim must be 1, 2, or 3");
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("Grid: points must be even and >= 4");
  }

  std::size_t total() const {
    std::size_t t = 1;
    for (int i = 0; i < dim; ++i) t *= static_cast<std::size_t>(points);
    return t;
  }

  double spacing() const { return 1.0 / points; }

  /// Largest truncation index n such that quadratic products of fields
  /// band-limited at n are exactly representable (points >= 4n+2).
  int max_dealiased_index() const { return (points - 2) / 4; }

  bool operator==(const Grid& o) const { return dim == o.dim && points == o.points; }
};

/// Per-axis truncation bounds (unused axes are ignored).
using MultiIndex = std::array<int, 3>;

inline MultiIndex cubic_index(int n) { return {n, n, n}; }

inline int minn(const MultiIndex& n, int dim) {
  int m = n[0];
  for (int i = 1; i < dim; ++i) m = std::min(m, n[i]);
  return m;
}

inline MultiIndex componentwise_min(const MultiIndex& a, const MultiIndex& b) {
  return {std::min(a[0], b[0]), std::min(a[1], b[1]), std::min(a[2], b[2])};
}

/// Signed wavenumber of a flat-layout axis index (FFT convention).
inline int axis_wavenumber(int idx, int points) {
  return idx <= points / 2 ? idx : idx - points;
}

/// Decompose a row-major flat index into signed wavenumbers k[0..dim).
inline void flat_to_wavenumber(std::size_t flat, const Grid& g, int k[3]) {
  const int N = g.points;
  for (int a = g.dim - 1; a >= 0; --a) {
    k[a] = axis_wavenumber(static_cast<int>(flat % N), N);
    flat /= N;
  }
}

/// Flat index of the mode with signed wavenumbers k (each |k_a| < points/2).
inline std::size_t wavenumber_to_flat(const int k[3], const Grid& g) {
  const int N = g.points;
  std::size_t flat = 0;
  for (int a = 0; a < g.dim; ++a) {
    int idx = k[a] >= 0 ? k[a] : k[a] + N;
    flat = flat * N + static_cast<std::size_t>(idx);
  }
  return flat;
}

}  // namespace snse
