// Fourier transform convention, fractional multiplier operators and norms.
//
// Forward transform approximates f_hat(xi) = integral of f(x) e^{-i x.xi} dx:
//   coeff_k = dx^n * sum_j u_j e^{-i x_j . xi_k}.
// The inverse carries the (2 pi)^{-n} dxi^n factor, so the round trip is the
// identity and discrete Parseval holds with the (2 pi)^{-n} weight:
//   dx^n sum |u_j|^2 = (2 pi)^{-n} dxi^n sum |u_hat_k|^2.
// Because x_j = (j - N/2) dx, each bin picks up a (-1)^{k1+...+kn} phase
// relative to the raw FFT.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "fraclab/fft.hpp"
#include "fraclab/field.hpp"
#include "fraclab/numerics.hpp"

namespace fraclab {

inline Spectrum transform(const Field& u) {
  if (!u.all_finite())
    throw std::invalid_argument("transform: non-finite input");
  const Grid& g = u.grid;
  std::vector<std::complex<double>> buf(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) buf[i] = {u.values[i], 0.0};
  detail::fft_forward(g, buf);
  const double scale = g.cell_volume();
  for (std::size_t i = 0; i < g.size(); ++i)
    buf[i] *= g.freq_parity_odd(i) ? -scale : scale;
  return Spectrum(g, std::move(buf));
}

inline Field inverse_transform(const Spectrum& s) {
  const Grid& g = s.grid;
  std::vector<std::complex<double>> buf(s.coeffs);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.freq_parity_odd(i)) buf[i] = -buf[i];
  detail::fft_backward(g, buf);
  // (2 pi)^{-n} dxi^n == L^{-n}
  const double scale = 1.0 / std::pow(g.length(), g.dim());
  Field out(g);
  for (std::size_t i = 0; i < g.size(); ++i) out.values[i] = buf[i].real() * scale;
  return out;
}

/// Apply a radial Fourier multiplier m(|xi|^2); the zero mode gets zero_mode.
template <typename Multiplier>
Field apply_multiplier(const Field& u, Multiplier&& m, double zero_mode) {
  Spectrum s = transform(u);
  const Grid& g = u.grid;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double xi2 = g.freq_norm2(i);
    s.coeffs[i] *= (xi2 == 0.0) ? zero_mode : m(xi2);
  }
  return inverse_transform(s);
}

/// (-Delta)^{s/2}: multiplier |xi|^s.  s = 0 is the identity (zero mode
/// included); for s > 0 the zero mode is annihilated.
inline Field fractional_laplacian(const Field& u, double s) {
  if (s < 0.0)
    throw std::invalid_argument(
        "fractional_laplacian: order must be >= 0 (use riesz_potential for "
        "negative orders)");
  if (s == 0.0) return u;
  return apply_multiplier(
      u, [s](double xi2) { return std::pow(xi2, 0.5 * s); }, 0.0);
}

/// Bessel potential: multiplier (1 + |xi|^2)^{-alpha/2}; an L2 contraction.
inline Field bessel_potential(const Field& u, double alpha) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("bessel_potential: order must be positive");
  return apply_multiplier(
      u, [alpha](double xi2) { return std::pow(1.0 + xi2, -0.5 * alpha); }, 1.0);
}

/// Riesz potential: multiplier |xi|^{-s} on nonzero modes, 0 < s < n.
/// The input must be mean-zero; the lost zero mode is otherwise unrecoverable.
inline Field riesz_potential(const Field& f, double s) {
  const Grid& g = f.grid;
  if (!(s > 0.0) || !(s < g.dim()))
    throw std::invalid_argument("riesz_potential: order must lie in (0, n)");
  if (!f.all_finite())
    throw std::invalid_argument("riesz_potential: non-finite input");
  double abs_sum = 0.0, mean_sum = 0.0;
  for (double v : f.values) {
    abs_sum += std::abs(v);
    mean_sum += v;
  }
  if (std::abs(mean_sum) > 1e-12 * abs_sum)
    throw std::invalid_argument(
        "riesz_potential: input not mean-zero (zero-mode loss)");
  return apply_multiplier(
      f, [s](double xi2) { return std::pow(xi2, -0.5 * s); }, 0.0);
}

/// (dx^n sum |u_j|^t)^{1/t} for any nonzero t (negative t needs |u| > 0).
inline double lp_norm(const Field& u, double t) {
  if (t == 0.0) throw std::invalid_argument("lp_norm: exponent must be nonzero");
  const std::size_t n = u.size();
  std::vector<double> terms(n);
  if (t == 2.0) {
    for (std::size_t i = 0; i < n; ++i) terms[i] = u.values[i] * u.values[i];
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double a = std::abs(u.values[i]);
      if (t < 0.0 && a == 0.0)
        throw std::invalid_argument("lp_norm: zero value with negative exponent");
      terms[i] = std::pow(a, t);
    }
  }
  const double sum = detail::canonical_sum(std::move(terms));
  return std::pow(u.grid.cell_volume() * sum, 1.0 / t);
}

/// Squared fractional Dirichlet energy: (2 pi)^{-n} dxi^n sum |xi|^{2s} |u_hat|^2.
/// At s = 0 this is exactly the squared L2 norm and is computed in real space.
inline double dirichlet_energy(const Field& u, double s) {
  if (s < 0.0)
    throw std::invalid_argument("dirichlet_energy: order must be >= 0");
  const Grid& g = u.grid;
  if (s == 0.0) {
    std::vector<double> terms(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      terms[i] = u.values[i] * u.values[i];
    return g.cell_volume() * detail::canonical_sum(std::move(terms));
  }
  const Spectrum sp = transform(u);
  std::vector<double> terms(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double xi2 = g.freq_norm2(i);
    const double w = (xi2 == 0.0) ? 0.0 : std::pow(xi2, s);
    terms[i] = w * std::norm(sp.coeffs[i]);
  }
  const double scale = 1.0 / std::pow(g.length(), g.dim());
  return scale * detail::canonical_sum(std::move(terms));
}

}  // namespace fraclab
