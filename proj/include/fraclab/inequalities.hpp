// Numerical certifiers for the rearrangement and interpolation inequalities:
// fractional Polya-Szego, the binomial-series/Bessel-pairing proof chain, the
// Gagliardo-Nirenberg family with its index algebra, the sharp Sobolev
// constant, and the mollifier convergence diagnostic.
#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraclab/field.hpp"
#include "fraclab/rearrange.hpp"
#include "fraclab/spectral.hpp"

namespace fraclab {

/// Outcome of one inequality check.  satisfied <=> lhs <= rhs * (1 + tolerance).
struct CertificateReport {
  std::string kind;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs over the constant-free right-hand side
  double slack = 0.0;  // (rhs - lhs) / rhs
  bool satisfied = false;
  double tolerance = 0.0;
  // metadata (nan where not applicable)
  int grid_dim = 0;
  int grid_points = 0;
  double grid_length = 0.0;
  double s = std::nan("");
  double p = std::nan("");
  double q = std::nan("");
  double r = std::nan("");
  double theta = std::nan("");

  void stamp_grid(const Grid& g) {
    grid_dim = g.dim();
    grid_points = g.points();
    grid_length = g.length();
  }
  void finish(double tol) {
    tolerance = tol;
    ratio = lhs / rhs;
    slack = (rhs - lhs) / rhs;
    satisfied = lhs <= rhs * (1.0 + tol);
  }
};

/// Rearrangement does not increase the fractional Dirichlet energy.
/// lhs = energy of u*, rhs = energy of u; equality is exact at s = 0.
inline CertificateReport polya_szego_certify(const Field& u, double s,
                                             double tol = 1e-3) {
  if (s < 0.0 || s > 1.0)
    throw std::invalid_argument("polya_szego_certify: s must lie in [0, 1]");
  CertificateReport rep;
  rep.kind = "polya_szego";
  rep.stamp_grid(u.grid);
  rep.s = s;
  rep.lhs = dirichlet_energy(schwarz_rearrange(u), s);
  rep.rhs = dirichlet_energy(u, s);
  rep.finish(tol);
  return rep;
}

/// One term of the binomial expansion of (xi^2/(1+xi^2))^s.
struct SeriesTerm {
  int k;
  double coefficient;  // (-1)^{k+1} binom(s, k), positive for 0 < s < 1
  double term;         // coefficient * (1+xi^2)^{-k}
  double partial;      // partial sum after subtracting this term
};

struct SeriesCheck {
  double limit;
  double partial;
  std::vector<SeriesTerm> terms;
};

/// Partial sums of (xi^2/(1+xi^2))^s = 1 - sum_k (-1)^{k+1} binom(s,k) (1+xi^2)^{-k}.
/// For 0 < s < 1 every coefficient is positive, so the partial sums decrease
/// monotonically onto the limit.
inline SeriesCheck multiplier_series_check(double xi2, double s, int terms) {
  if (!(s > 0.0) || !(s < 1.0))
    throw std::invalid_argument("multiplier_series_check: s must lie in (0, 1)");
  if (!(xi2 >= 0.0))
    throw std::invalid_argument("multiplier_series_check: xi^2 must be >= 0");
  if (terms < 1)
    throw std::invalid_argument("multiplier_series_check: need at least one term");
  SeriesCheck out;
  out.limit = (xi2 == 0.0) ? 0.0 : std::pow(xi2 / (1.0 + xi2), s);
  const double t = 1.0 / (1.0 + xi2);
  double partial = 1.0;
  double binom = 1.0;  // binom(s, k), built up iteratively
  double tk = 1.0;
  out.terms.reserve(terms);
  for (int k = 1; k <= terms; ++k) {
    binom *= (s - (k - 1)) / k;
    tk *= t;
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    const double coeff = sign * binom;
    const double term = coeff * tk;
    partial -= term;
    out.terms.push_back({k, coeff, term, partial});
  }
  out.partial = partial;
  return out;
}

/// Bessel-weighted spectral pairing (2 pi)^{-n} dxi^n sum (1+|xi|^2)^{-k} |u_hat|^2.
inline double bessel_pairing(const Field& u, int k) {
  const Grid& g = u.grid;
  const Spectrum sp = transform(u);
  std::vector<double> terms(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    terms[i] =
        std::pow(1.0 + g.freq_norm2(i), -k) * std::norm(sp.coeffs[i]);
  return detail::canonical_sum(std::move(terms)) /
         std::pow(g.length(), g.dim());
}

/// Rearrangement increases the Bessel pairing: lhs = pairing(u), rhs = pairing(u*).
inline CertificateReport bessel_pairing_check(const Field& u, int k,
                                              double tol = 1e-10) {
  if (k < 1) throw std::invalid_argument("bessel_pairing_check: k must be >= 1");
  CertificateReport rep;
  rep.kind = "bessel_pairing";
  rep.stamp_grid(u.grid);
  rep.p = k;
  rep.lhs = bessel_pairing(u, k);
  rep.rhs = bessel_pairing(schwarz_rearrange(u), k);
  rep.finish(tol);
  return rep;
}

/// Exponent tuple of the interpolation inequality
///   ||u||_q^q <= C ||(-Delta)^{s/2} u||_p^{m theta} ||u||_r^{q - m theta}
/// with m theta (1/p - s/n) + (q - m theta)/r = 1.
struct GNIndexSet {
  int n;
  double s, p, q, r, m, theta;
  double p0;  // from 1/p0 = 1/p - s/n (infinite at the critical p = n/s)

  double index_residual() const {
    return m * theta * (1.0 / p - s / n) + (q - m * theta) / r - 1.0;
  }
};

/// Solve the index relation for theta and validate the admissibility
/// constraints; throws naming the violated constraint.
inline GNIndexSet gn_indices_solve(int n, double s, double p, double r,
                                   double m, double q) {
  if (n < 1 || n > 3)
    throw std::invalid_argument("gn_indices_solve: n out of range (need 1, 2 or 3)");
  if (!(s > 0.0) || !(s < n))
    throw std::invalid_argument("gn_indices_solve: s out of range (need 0 < s < n)");
  if (!(p > 1.0) || p > n / s + 1e-15)
    throw std::invalid_argument("gn_indices_solve: p out of range (need 1 < p <= n/s)");
  if (!(r > 0.0)) throw std::invalid_argument("gn_indices_solve: r must be positive");
  if (!(q > 0.0)) throw std::invalid_argument("gn_indices_solve: q must be positive");
  if (m == 0.0) throw std::invalid_argument("gn_indices_solve: m must be nonzero");

  // m theta (1/p - s/n - 1/r) = 1 - q/r
  const double coeff = m * (1.0 / p - s / n - 1.0 / r);
  if (coeff == 0.0)
    throw std::invalid_argument(
        "gn_indices_solve: no admissible theta (degenerate index relation)");
  const double theta = (1.0 - q / r) / coeff;

  GNIndexSet idx{n, s, p, q, r, m, theta, 0.0};
  const double inv_p0 = 1.0 / p - s / n;
  idx.p0 = (inv_p0 > 0.0) ? 1.0 / inv_p0
                          : std::numeric_limits<double>::infinity();

  const double mtheta = m * theta;
  if (!(mtheta > 0.0))
    throw std::invalid_argument("gn_indices_solve: m*theta must be positive");
  if (std::abs(q - mtheta) < 1e-14)
    throw std::invalid_argument("gn_indices_solve: q = m*theta not allowed");
  if (r / (q - mtheta) < 1.0 - 1e-14)
    throw std::invalid_argument(
        "gn_indices_solve: r/(q - m*theta) out of range (need >= 1)");
  if (std::abs(idx.index_residual()) > 1e-12)
    throw std::logic_error("gn_indices_solve: index relation not satisfied");
  return idx;
}

/// Certify the m = q interpolation inequality against a configured constant C.
/// The reported ratio ||u||_q / (||grad_s u||_p^theta ||u||_r^{1-theta}) is
/// scale-free: invariant under u -> lambda u and under dilation when the
/// index relation holds.
inline CertificateReport gn_certify(const Field& u, const GNIndexSet& idx,
                                    double constant = 10.0, double tol = 0.0) {
  if (idx.m != idx.q)
    throw std::invalid_argument("gn_certify: only the m = q form is supported");
  const double norm_q = lp_norm(u, idx.q);
  const double norm_r = lp_norm(u, idx.r);
  if (norm_r == 0.0) throw std::invalid_argument("gn_certify: zero field");
  double grad_norm;
  if (idx.p == 2.0) {
    grad_norm = std::sqrt(dirichlet_energy(u, idx.s));
  } else {
    grad_norm = lp_norm(fractional_laplacian(u, idx.s), idx.p);
  }
  CertificateReport rep;
  rep.kind = "gn";
  rep.stamp_grid(u.grid);
  rep.s = idx.s;
  rep.p = idx.p;
  rep.q = idx.q;
  rep.r = idx.r;
  rep.theta = idx.theta;
  rep.lhs = norm_q;
  rep.rhs = constant * std::pow(grad_norm, idx.theta) *
            std::pow(norm_r, 1.0 - idx.theta);
  rep.finish(tol);
  rep.ratio = norm_q / (std::pow(grad_norm, idx.theta) *
                        std::pow(norm_r, 1.0 - idx.theta));
  return rep;
}

/// Sharp constant of ||u||_q <= C0 ||(-Delta)^{s/2} u||_p at q = pn/(n-sp):
/// pi^{s/2} Gamma((n-s)/2)/Gamma((n+s)/2) * (Gamma(n)/Gamma(n/2))^{s/n},
/// evaluated through log-Gamma.
inline double sharp_sobolev_constant(int n, double s) {
  if (n < 1)
    throw std::invalid_argument("sharp_sobolev_constant: n must be >= 1");
  if (!(s > 0.0) || !(s < n))
    throw std::invalid_argument("sharp_sobolev_constant: s must lie in (0, n)");
  const double nd = n;
  const double log_value = 0.5 * s * std::log(std::numbers::pi) +
                           std::lgamma(0.5 * (nd - s)) -
                           std::lgamma(0.5 * (nd + s)) +
                           (s / nd) * (std::lgamma(nd) - std::lgamma(0.5 * nd));
  return std::exp(log_value);
}

/// Certify ||u||_q <= C0 ||(-Delta)^{s/2} u||_p with q = pn/(n-sp).
/// constant < 0 requests the sharp constant (available on the p = 2 route).
inline CertificateReport sobolev_certify(const Field& u, double s, double p,
                                         double constant = -1.0,
                                         double tol = 0.0) {
  const int n = u.grid.dim();
  if (!(s > 0.0) || !(s < n))
    throw std::invalid_argument("sobolev_certify: s must lie in (0, n)");
  if (!(p > 1.0) || !(p < n / s))
    throw std::invalid_argument("sobolev_certify: p out of range (need 1 < p < n/s)");
  const double q = p * n / (n - s * p);
  double c0 = constant;
  if (c0 < 0.0) {
    if (p != 2.0)
      throw std::invalid_argument(
          "sobolev_certify: sharp constant only configured for p = 2");
    c0 = sharp_sobolev_constant(n, s);
  }
  CertificateReport rep;
  rep.kind = "sobolev";
  rep.stamp_grid(u.grid);
  rep.s = s;
  rep.p = p;
  rep.q = q;
  rep.lhs = lp_norm(u, q);
  const double grad_norm = (p == 2.0)
                               ? std::sqrt(dirichlet_energy(u, s))
                               : lp_norm(fractional_laplacian(u, s), p);
  rep.rhs = c0 * grad_norm;
  rep.finish(tol);
  rep.ratio = rep.lhs / grad_norm;
  return rep;
}

/// Discretely normalized mollifier phi^level (support radius 1/level, unit sum).
inline Field mollifier_field(const Grid& g, double level) {
  if (!(level > 0.0))
    throw std::invalid_argument("mollifier_field: level must be positive");
  Field u(g);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = level * g.radius(i);
    const double v = (t < 1.0) ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
    u.values[i] = v;
    sum += v;
  }
  const double scale = 1.0 / (sum * g.cell_volume());
  for (double& v : u.values) v *= scale;
  return u;
}

/// Reference grids sized so the sharpest standard level (l = 16) is barely
/// resolved (support about one cell, near-delta): the diagnostic then decays
/// continuum-like at small l and collapses once the mollifier degenerates.
inline Grid compactness_reference_grid(int n) {
  switch (n) {
    case 1: return Grid(1, 512, 30.0);
    case 2: return Grid(2, 256, 15.0);
    default: return Grid(3, 64, 3.75);
  }
}

/// ||phi^level * G_s - G_s||_1 on a reference grid, for each level.
/// G_s is realized spectrally as the multiplier (1 + |xi|^2)^{-s/2}; the
/// sequence decreases toward 0 as the mollifier sharpens.
inline std::vector<double> compactness_diagnostic(int n, double s,
                                                  const std::vector<double>& levels,
                                                  const Grid* reference = nullptr) {
  const Grid g = reference ? *reference : compactness_reference_grid(n);
  if (g.dim() != n)
    throw std::invalid_argument("compactness_diagnostic: grid dimension mismatch");
  if (!(s > 0.0) || !(s < n))
    throw std::invalid_argument("compactness_diagnostic: s must lie in (0, n)");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0))
      throw std::invalid_argument("compactness_diagnostic: levels must be positive");
    if (i > 0 && levels[i] <= levels[i - 1])
      throw std::invalid_argument("compactness_diagnostic: levels must increase");
  }
  std::vector<double> out;
  out.reserve(levels.size());
  for (double level : levels) {
    const Spectrum mhat = transform(mollifier_field(g, level));
    Spectrum diff(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double bessel = std::pow(1.0 + g.freq_norm2(i), -0.5 * s);
      diff.coeffs[i] = (mhat.coeffs[i] - 1.0) * bessel;
    }
    out.push_back(lp_norm(inverse_transform(diff), 1.0));
  }
  return out;
}

}  // namespace fraclab
