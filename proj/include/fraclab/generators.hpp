// Built-in field generators, translations and integer dilations.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "fraclab/field.hpp"
#include "fraclab/spectral.hpp"

namespace fraclab {

inline Field gaussian_field(const Grid& g, double sigma = 1.0,
                            double amplitude = 1.0) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_field: sigma must be > 0");
  Field u(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = g.radius(i);
    u.values[i] = amplitude * std::exp(-0.5 * r * r / (sigma * sigma));
  }
  return u;
}

/// Smooth bump exp(1 - 1/(1 - (r/R)^2)) inside radius R, exactly zero outside.
inline Field bump_field(const Grid& g, double radius, double amplitude = 1.0) {
  if (!(radius > 0.0)) throw std::invalid_argument("bump_field: radius must be > 0");
  Field u(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = g.radius(i) / radius;
    u.values[i] = (t < 1.0) ? amplitude * std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0;
  }
  return u;
}

inline Field ball_indicator_field(const Grid& g, double radius,
                                  double height = 1.0) {
  Field u(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    u.values[i] = (g.radius(i) <= radius) ? height : 0.0;
  return u;
}

/// Circular shift by whole grid cells.
inline Field translate(const Field& u, const std::array<int, 3>& cells) {
  const Grid& g = u.grid;
  const int n = g.points();
  Field out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto mi = g.unravel(i);
    for (int a = 0; a < g.dim(); ++a)
      mi[a] = ((mi[a] - cells[a]) % n + n) % n;
    out.values[i] = u.values[g.ravel(mi)];
  }
  return out;
}

/// Two separated bumps (offset along the first axis), deliberately asymmetric.
inline Field two_bump_field(const Grid& g, double radius, double separation,
                            double amplitude = 1.0,
                            double second_amplitude = 0.6) {
  const int cells = static_cast<int>(std::lround(0.5 * separation / g.spacing()));
  Field a = bump_field(g, radius, amplitude);
  Field b = bump_field(g, radius, second_amplitude);
  Field left = translate(a, {-cells, 0, 0});
  Field right = translate(b, {cells, 0, 0});
  Field out(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    out.values[i] = left.values[i] + right.values[i];
  return out;
}

/// Compression u(x) -> u(factor * x) by exact index resampling (factor >= 1).
/// Arguments that leave the box are treated as hitting the (assumed
/// negligible) tail: the output is 0 there.  Wrapping instead would tile the
/// compressed field factor^n times.
inline Field dilate(const Field& u, int factor) {
  if (factor < 1) throw std::invalid_argument("dilate: factor must be >= 1");
  const Grid& g = u.grid;
  const int n = g.points();
  const int c = g.center();
  Field out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto mi = g.unravel(i);
    bool inside = true;
    for (int a = 0; a < g.dim() && inside; ++a) {
      const std::int64_t src = c + static_cast<std::int64_t>(factor) * (mi[a] - c);
      if (src < 0 || src >= n) {
        inside = false;
        break;
      }
      mi[a] = static_cast<int>(src);
    }
    out.values[i] = inside ? u.values[g.ravel(mi)] : 0.0;
  }
  return out;
}

namespace detail {

// Deterministic uniforms/normals: the draw sequence is fixed by the seed and
// the frequency-box iteration order, never by the grid resolution.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double standard_normal(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  while (u1 == 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace detail

/// Positive, even, exactly band-limited bump: inverse transform of a Gaussian
/// coefficient profile exp(-|k|^2 / 2 sigma_k^2) truncated at |k_i| <= k_max.
/// In space this is close to a periodized Gaussian of width L/(2 pi sigma_k),
/// so norms involving powers up to N/(2 k_max) stay spectrally exact.
inline Field spectral_bump_field(const Grid& g, int k_max, double sigma_k) {
  if (k_max < 1 || k_max >= g.points() / 2)
    throw std::invalid_argument("spectral_bump_field: k_max must lie in [1, N/2)");
  if (!(sigma_k > 0.0))
    throw std::invalid_argument("spectral_bump_field: sigma_k must be positive");
  Spectrum s(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto mi = g.unravel(i);
    double k2 = 0.0;
    bool inside = true;
    for (int a = 0; a < g.dim(); ++a) {
      const int ka = g.freq_index(mi[a]);
      if (ka < -k_max || ka > k_max) inside = false;
      k2 += static_cast<double>(ka) * ka;
    }
    s.coeffs[i] = inside ? std::exp(-k2 / (2.0 * sigma_k * sigma_k)) : 0.0;
  }
  return inverse_transform(s);
}

/// Random real field with spectrum supported on |k_i| <= k_max per axis.
///
/// Coefficients are drawn in a fixed order over the frequency box, so the
/// same (seed, k_max, L) describes the same underlying function across grid
/// resolutions; only the sampling changes.
inline Field random_band_limited_field(const Grid& g, int k_max,
                                       std::uint64_t seed) {
  if (k_max < 1 || k_max >= g.points() / 2)
    throw std::invalid_argument(
        "random_band_limited_field: k_max must lie in [1, N/2)");
  std::mt19937_64 rng(seed);
  Spectrum s(g);
  const int n = g.points();
  const int lo = -k_max, hi = k_max;
  std::array<int, 3> k{0, 0, 0};
  auto visit = [&](const std::array<int, 3>& kv) {
    // Determine the sign class: first nonzero component decides.
    int cls = 0;
    for (int a = 0; a < g.dim(); ++a) {
      if (kv[a] != 0) {
        cls = kv[a] > 0 ? 1 : -1;
        break;
      }
    }
    if (cls < 0) return;  // filled by Hermitian mirror
    const double re = detail::standard_normal(rng);
    const double im = (cls == 0) ? 0.0 : detail::standard_normal(rng);
    std::array<int, 3> bin{0, 0, 0}, mirror{0, 0, 0};
    for (int a = 0; a < g.dim(); ++a) {
      bin[a] = (kv[a] % n + n) % n;
      mirror[a] = ((-kv[a]) % n + n) % n;
    }
    s.coeffs[g.ravel(bin)] = {re, im};
    if (cls != 0) s.coeffs[g.ravel(mirror)] = {re, -im};
  };
  if (g.dim() == 1) {
    for (k[0] = lo; k[0] <= hi; ++k[0]) visit(k);
  } else if (g.dim() == 2) {
    for (k[0] = lo; k[0] <= hi; ++k[0])
      for (k[1] = lo; k[1] <= hi; ++k[1]) visit(k);
  } else {
    for (k[0] = lo; k[0] <= hi; ++k[0])
      for (k[1] = lo; k[1] <= hi; ++k[1])
        for (k[2] = lo; k[2] <= hi; ++k[2]) visit(k);
  }
  return inverse_transform(s);
}

}  // namespace fraclab
