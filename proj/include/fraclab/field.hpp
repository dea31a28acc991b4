// Real-space samples and Fourier coefficients of a function on a Grid.
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fraclab/grid.hpp"

namespace fraclab {

/// Real scalar samples, row-major over grid points.
struct Field {
  Grid grid;
  std::vector<double> values;

  Field(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
      throw std::invalid_argument("Field: value count does not match grid");
  }
  explicit Field(Grid g) : grid(g), values(grid.size(), 0.0) {}

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }

  bool all_finite() const {
    for (double v : values)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

/// Complex coefficients indexed by FFT bin order (see Grid::freq_index).
struct Spectrum {
  Grid grid;
  std::vector<std::complex<double>> coeffs;

  Spectrum(Grid g, std::vector<std::complex<double>> c)
      : grid(g), coeffs(std::move(c)) {
    if (coeffs.size() != grid.size())
      throw std::invalid_argument("Spectrum: coefficient count does not match grid");
  }
  explicit Spectrum(Grid g) : grid(g), coeffs(grid.size(), {0.0, 0.0}) {}

  std::size_t size() const { return coeffs.size(); }
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (a != b) throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

}  // namespace fraclab
