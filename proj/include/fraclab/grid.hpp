// Uniform periodic grid on [-L/2, L/2)^n with the matching Fourier lattice.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fraclab {

/// Periodic box discretization of R^n, n in {1,2,3}.
///
/// Each axis carries N points x_i = (i - N/2) * dx with dx = L/N, so the box
/// center x = 0 is always a grid point.  Spectral bins follow FFT order: bin
/// index m on an axis corresponds to the integer frequency k = m for m < N/2
/// and k = m - N otherwise, with physical frequency xi = 2*pi*k/L.
class Grid {
 public:
  Grid(int dim, int points_per_axis, double box_length)
      : dim_(dim), points_(points_per_axis), length_(box_length) {
    if (dim_ < 1 || dim_ > 3)
      throw std::invalid_argument("Grid: dimension must be 1, 2 or 3");
    if (points_ < 8 || points_ % 2 != 0)
      throw std::invalid_argument("Grid: points per axis must be even and >= 8");
    if (!(length_ > 0.0) || !std::isfinite(length_))
      throw std::invalid_argument("Grid: box length must be positive and finite");
    size_ = 1;
    for (int a = 0; a < dim_; ++a) size_ *= static_cast<std::size_t>(points_);
  }

  int dim() const { return dim_; }
  int points() const { return points_; }
  double length() const { return length_; }
  std::size_t size() const { return size_; }

  double spacing() const { return length_ / points_; }
  double freq_spacing() const { return 2.0 * std::numbers::pi / length_; }
  double cell_volume() const { return std::pow(spacing(), dim_); }
  int center() const { return points_ / 2; }

  /// Physical coordinate of axis index i (the box center sits at i = N/2).
  double coord(int i) const { return (i - center()) * spacing(); }

  /// Integer frequency of FFT bin m on one axis, in [-N/2, N/2).
  int freq_index(int m) const { return m < center() ? m : m - points_; }

  /// Physical frequency of FFT bin m on one axis.
  double freq(int m) const { return freq_index(m) * freq_spacing(); }

  /// Row-major multi-index of a linear index (last axis fastest).
  std::array<int, 3> unravel(std::size_t idx) const {
    std::array<int, 3> mi{0, 0, 0};
    for (int a = dim_ - 1; a >= 0; --a) {
      mi[a] = static_cast<int>(idx % points_);
      idx /= points_;
    }
    return mi;
  }

  std::size_t ravel(const std::array<int, 3>& mi) const {
    std::size_t idx = 0;
    for (int a = 0; a < dim_; ++a)
      idx = idx * points_ + static_cast<std::size_t>(mi[a]);
    return idx;
  }

  /// Distance of grid point idx from the box center.
  double radius(std::size_t idx) const {
    const auto mi = unravel(idx);
    double r2 = 0.0;
    for (int a = 0; a < dim_; ++a) {
      const double x = coord(mi[a]);
      r2 += x * x;
    }
    return std::sqrt(r2);
  }

  /// Squared distance from the center in index units (exact integer).
  std::int64_t radius2_cells(std::size_t idx) const {
    const auto mi = unravel(idx);
    std::int64_t r2 = 0;
    for (int a = 0; a < dim_; ++a) {
      const std::int64_t o = mi[a] - center();
      r2 += o * o;
    }
    return r2;
  }

  /// |xi|^2 of spectral bin idx.
  double freq_norm2(std::size_t idx) const {
    const auto mi = unravel(idx);
    double s = 0.0;
    for (int a = 0; a < dim_; ++a) {
      const double xi = freq(mi[a]);
      s += xi * xi;
    }
    return s;
  }

  /// Parity of the integer-frequency sum of bin idx; drives the phase that
  /// re-centers transforms onto x in [-L/2, L/2).
  bool freq_parity_odd(std::size_t idx) const {
    const auto mi = unravel(idx);
    int s = 0;
    for (int a = 0; a < dim_; ++a) s += mi[a];
    return (s & 1) != 0;
  }

  bool operator==(const Grid& o) const {
    return dim_ == o.dim_ && points_ == o.points_ && length_ == o.length_;
  }
  bool operator!=(const Grid& o) const { return !(*this == o); }

  std::string describe() const {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%d,%d,%.17g", dim_, points_, length_);
    return buf;
  }

 private:
  int dim_;
  int points_;
  double length_;
  std::size_t size_;
};

}  // namespace fraclab
