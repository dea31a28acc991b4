// Certifier checks: exact fixed points of the rearrangement inequalities,
// independent binomial and Gamma-function oracles, index algebra edge cases,
// and the dilation covariance of the interpolation ratio.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "fraclab/fraclab.hpp"

using namespace fraclab;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("polya szego: symmetric fields are exact fixed points") {
  const Grid g(1, 128, 30.0);
  const Field u = gaussian_field(g, 2.0);
  for (double s : {0.0, 0.3, 0.7, 1.0}) {
    const CertificateReport rep = polya_szego_certify(u, s);
    CHECK(rep.satisfied);
    // u* == u bit for bit, so both energies are the same computation
    CHECK(rep.slack == 0.0);
    CHECK(rep.ratio == 1.0);
  }
  CHECK_THROWS_AS(polya_szego_certify(u, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(polya_szego_certify(u, -0.1), std::invalid_argument);
}

TEST_CASE("polya szego: s = 0 is exact equality for any field") {
  // At s = 0 both sides are the L2 norm; equimeasurability plus the
  // canonical summation order makes the slack exactly zero.
  const Grid g(2, 32, 10.0);
  const Field u = two_bump_field(g, 1.5, 4.0);
  const CertificateReport rep = polya_szego_certify(u, 0.0);
  CHECK(rep.slack == 0.0);
  CHECK(rep.satisfied);
}

TEST_CASE("polya szego: asymmetric fields have stable positive slack") {
  // The gap is a continuum quantity: refining the grid must not erode it.
  double slack_coarse = 0.0, slack_fine = 0.0;
  for (int N : {128, 256}) {
    const Grid g(1, N, 40.0);
    const Field u = two_bump_field(g, 3.0, 12.0);
    const CertificateReport rep = polya_szego_certify(u, 0.5);
    CHECK(rep.satisfied);
    CHECK(rep.slack > 0.1);
    (N == 128 ? slack_coarse : slack_fine) = rep.slack;
  }
  CHECK(slack_fine > 0.9 * slack_coarse);
}

TEST_CASE("multiplier series coefficients match a direct binomial product") {
  const double s = 0.5;
  const SeriesCheck sc = multiplier_series_check(1.0, s, 20);
  REQUIRE(sc.terms.size() == 20);
  CHECK(sc.terms[0].coefficient == Catch::Approx(0.5).margin(1e-15));
  CHECK(sc.terms[1].coefficient == Catch::Approx(0.125).margin(1e-15));

  // |binom(s,k)| = s (1-s) (2-s) ... (k-1-s) / k!
  double oracle = s;
  for (int k = 1; k <= 20; ++k) {
    if (k > 1) oracle *= (k - 1 - s) / k;
    const SeriesTerm& t = sc.terms[k - 1];
    CHECK(t.k == k);
    CHECK(t.coefficient == Catch::Approx(oracle / (k == 1 ? 1 : 1)).epsilon(1e-13));
    CHECK(t.coefficient > 0.0);
  }
}

TEST_CASE("multiplier series decreases monotonically onto the limit") {
  for (double xi2 : {0.5, 1.0, 4.0}) {
    for (double s : {0.25, 0.5, 0.75}) {
      const SeriesCheck sc = multiplier_series_check(xi2, s, 30);
      CHECK(sc.limit == Catch::Approx(std::pow(xi2 / (1.0 + xi2), s)));
      double prev = 1.0;
      for (const SeriesTerm& t : sc.terms) {
        CHECK(t.partial >= sc.limit - 1e-15);
        CHECK(t.partial <= prev);
        prev = t.partial;
      }
      CHECK(std::abs(sc.partial - sc.limit) <
            std::abs(sc.terms.front().term));
    }
  }
  CHECK_THROWS_AS(multiplier_series_check(1.0, 0.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(multiplier_series_check(1.0, 1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(multiplier_series_check(-1.0, 0.5, 5), std::invalid_argument);
  CHECK_THROWS_AS(multiplier_series_check(1.0, 0.5, 0), std::invalid_argument);
}

TEST_CASE("series expansion reproduces the spectral multiplier pairing") {
  // (1/L^n) sum (xi^2/(1+xi^2))^s |u_hat|^2
  //   == ||u||_2^2 - sum_k coeff_k * bessel_pairing(u, k)
  // once the zero mode is removed.  On L = 2 pi the smallest surviving
  // xi^2 is 1, so 20 terms leave a ~2^{-20} tail.
  const Grid g(1, 32, 2.0 * std::numbers::pi);
  Field u = random_band_limited_field(g, 10, 5);
  double mean = 0.0;
  for (double v : u.values) mean += v;
  mean /= static_cast<double>(u.size());
  for (auto& v : u.values) v -= mean;

  const double s = 0.5;
  const Spectrum sp = transform(u);
  double direct = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double xi2 = g.freq_norm2(i);
    if (xi2 == 0.0) continue;
    direct += std::pow(xi2 / (1.0 + xi2), s) * std::norm(sp.coeffs[i]);
  }
  direct /= g.length();

  const SeriesCheck sc = multiplier_series_check(1.0, s, 20);
  const double l2 = lp_norm(u, 2.0);
  double via_series = l2 * l2;
  for (const SeriesTerm& t : sc.terms)
    via_series -= t.coefficient * bessel_pairing(u, t.k);
  CHECK(direct == Catch::Approx(via_series).epsilon(1e-8));
}

TEST_CASE("bessel pairing grows under rearrangement") {
  const Grid g(1, 256, 40.0);
  const Field u = two_bump_field(g, 2.5, 14.0);
  for (int k : {1, 2, 3}) {
    const CertificateReport rep = bessel_pairing_check(u, k);
    CHECK(rep.satisfied);
    CHECK(rep.lhs < rep.rhs);
    CHECK(rep.p == k);
  }
  // symmetric input: u* == u bitwise, so the check is an exact equality
  const CertificateReport sym = bessel_pairing_check(gaussian_field(g, 2.0), 2);
  CHECK(sym.slack == 0.0);
  CHECK_THROWS_AS(bessel_pairing_check(u, 0), std::invalid_argument);
}

TEST_CASE("gn index algebra solves theta and rejects bad tuples") {
  // boundary tuple: p = n/s exactly, r/(q - m theta) = 1 exactly
  const GNIndexSet idx = gn_indices_solve(2, 1.0, 2.0, 2.0, 4.0, 4.0);
  CHECK(idx.theta == Catch::Approx(0.5).margin(1e-14));
  CHECK(std::abs(idx.index_residual()) <= 1e-15);
  CHECK(std::isinf(idx.p0));

  // p = r = 2, m = q: theta must agree with n (q - 2) / (2 q s).  In n = 1
  // that route needs s <= 1/2 (else p = 2 > n/s) and q != 2 + 4s (else the
  // tuple degenerates to the mass-critical endpoint q = m theta).
  const double qs_pairs[][2] = {{3.0, 0.25}, {3.0, 0.5}, {4.0, 0.5}, {6.0, 0.5}};
  for (const auto& qs : qs_pairs) {
    const double q = qs[0], s = qs[1];
    const GNIndexSet i1 = gn_indices_solve(1, s, 2.0, 2.0, q, q);
    CHECK(i1.theta == Catch::Approx((q - 2.0) / (2.0 * q * s)).epsilon(1e-13));
    CHECK(std::abs(i1.index_residual()) <= 1e-14);
  }

  CHECK_THROWS_WITH(gn_indices_solve(5, 0.5, 2, 2, 4, 4),
                    ContainsSubstring("n out of range"));
  CHECK_THROWS_WITH(gn_indices_solve(1, 2.0, 2, 2, 4, 4),
                    ContainsSubstring("s out of range"));
  CHECK_THROWS_WITH(gn_indices_solve(1, 0.75, 2, 2, 4, 4),
                    ContainsSubstring("p out of range"));
  CHECK_THROWS_WITH(gn_indices_solve(1, 0.5, 1.0, 2, 4, 4),
                    ContainsSubstring("p out of range"));
  CHECK_THROWS_WITH(gn_indices_solve(1, 0.5, 2, 0.0, 4, 4),
                    ContainsSubstring("r must be positive"));
  CHECK_THROWS_WITH(gn_indices_solve(1, 0.25, 2, 4, 4, 4),
                    ContainsSubstring("degenerate index relation"));
  CHECK_THROWS_WITH(gn_indices_solve(1, 0.5, 2, 4, 2, 2),
                    ContainsSubstring("m*theta must be positive"));
  CHECK_THROWS_WITH(gn_indices_solve(1, 0.5, 1.25, 2, 10.0 / 3.0, 10.0 / 3.0),
                    ContainsSubstring("q = m*theta not allowed"));
  // s = 0.25, q = 6 gives m*theta = 8 > q, so r/(q - m*theta) < 0
  CHECK_THROWS_WITH(gn_indices_solve(1, 0.25, 2, 2, 6, 6),
                    ContainsSubstring("r/(q - m*theta) out of range"));
}

TEST_CASE("gn certificate ratio is amplitude invariant") {
  const Grid g(1, 256, 40.0);
  const GNIndexSet idx = gn_indices_solve(1, 0.5, 2.0, 2.0, 4.0, 4.0);
  const Field u = gaussian_field(g, 1.5);
  Field scaled = u;
  for (auto& v : scaled.values) v *= 3.0;
  const CertificateReport a = gn_certify(u, idx);
  const CertificateReport b = gn_certify(scaled, idx);
  CHECK(a.satisfied);
  CHECK(b.ratio == Catch::Approx(a.ratio).epsilon(1e-12));

  // the p = 2 shortcut agrees with the generic route by Parseval
  CHECK(lp_norm(fractional_laplacian(u, idx.s), 2.0) ==
        Catch::Approx(std::sqrt(dirichlet_energy(u, idx.s))).epsilon(1e-12));

  GNIndexSet wrong = idx;
  wrong.m = 2.0;
  CHECK_THROWS_AS(gn_certify(u, wrong), std::invalid_argument);
  CHECK_THROWS_AS(gn_certify(Field(g), idx), std::invalid_argument);
}

TEST_CASE("gn certificate ratio is dilation covariant") {
  // Mass-preserving compression u -> delta^{n/2} u(delta x) leaves the
  // scale-free ratio invariant up to quadrature error; an exactly
  // band-limited bump keeps that error below 1e-3.
  const Grid g(1, 512, 40.0);
  const GNIndexSet idx = gn_indices_solve(1, 0.5, 2.0, 2.0, 4.0, 4.0);
  const Field u = spectral_bump_field(g, 48, 12.0);
  const int delta = 2;
  Field v = dilate(u, delta);
  const double scale = std::sqrt(static_cast<double>(delta));
  for (auto& w : v.values) w *= scale;
  const double r0 = gn_certify(u, idx).ratio;
  const double r1 = gn_certify(v, idx).ratio;
  CHECK(std::abs(r1 - r0) / r0 < 1e-3);
}

TEST_CASE("sharp sobolev constant matches high precision values") {
  struct Entry {
    int n;
    double s, value;
  };
  // frozen from a 40-digit Gamma-function evaluation of
  // pi^{s/2} Gamma((n-s)/2)/Gamma((n+s)/2) (Gamma(n)/Gamma(n/2))^{s/n}
  const Entry table[] = {
      {1, 0.05, 1.10325320815118509},
      {1, 0.1, 1.21781253996306267},
      {1, 0.25, 1.65242595980653336},
      {1, 0.5, 2.95867511918863889},
      {1, 0.75, 6.91407818968602416},
      {1, 0.9, 18.8763611381355949},
      {1, 0.99, 198.848874128927181},
      {2, 0.25, 1.33505585120076444},
      {2, 0.5, 1.79990747232225138},
      {2, 0.75, 2.47900798331130072},
      {2, 1.0, 3.54490770181103205},
      {2, 1.5, 9.30890119453082514},
      {2, 1.9, 58.9504400501203555},
      {3, 0.5, 1.50375702371205755},
      {3, 1.0, 2.32489470301925295},
      {3, 1.5, 3.83404875115389506},
      {3, 2.0, 7.2068471735026405},
      {3, 2.5, 18.5783092388125459},
      {3, 2.75, 42.8878231614417511},
      {3, 2.9, 117.687299140396206},
  };
  for (const Entry& e : table)
    CHECK(sharp_sobolev_constant(e.n, e.s) ==
          Catch::Approx(e.value).epsilon(1e-14));
  CHECK_THROWS_AS(sharp_sobolev_constant(1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sharp_sobolev_constant(2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(sharp_sobolev_constant(0, 0.5), std::invalid_argument);
}

TEST_CASE("sobolev certification") {
  const Grid g(2, 64, 20.0);
  const Field u = gaussian_field(g, 1.5);
  const CertificateReport rep = sobolev_certify(u, 0.5, 2.0);
  CHECK(rep.q == Catch::Approx(4.0));  // q = pn/(n - sp) = 4 at (2, 0.5, 2)
  CHECK(rep.satisfied);
  CHECK(rep.ratio < sharp_sobolev_constant(2, 0.5));

  // p = n/s sits outside the strict subcritical window
  CHECK_THROWS_WITH(sobolev_certify(u, 1.0, 2.0),
                    ContainsSubstring("p out of range"));
  CHECK_THROWS_WITH(sobolev_certify(u, 0.5, 3.0),
                    ContainsSubstring("sharp constant only configured"));
  CHECK_NOTHROW(sobolev_certify(u, 0.5, 3.0, 25.0));
}

TEST_CASE("mollifier has unit integral and shrinking support") {
  const Grid g = compactness_reference_grid(1);
  for (double level : {2.0, 4.0, 8.0}) {
    const Field phi = mollifier_field(g, level);
    CHECK(lp_norm(phi, 1.0) == Catch::Approx(1.0).epsilon(1e-10));
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g.radius(i) >= 1.0 / level) CHECK(phi.values[i] == 0.0);
  }
  CHECK_THROWS_AS(mollifier_field(g, 0.0), std::invalid_argument);
}

TEST_CASE("compactness diagnostic decreases and collapses") {
  const std::vector<double> levels{2.0, 4.0, 8.0, 16.0};
  for (double s : {0.25, 0.5}) {
    const std::vector<double> values = compactness_diagnostic(1, s, levels);
    REQUIRE(values.size() == levels.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      CHECK(values[i] > 0.0);
      if (i > 0) CHECK(values[i] < values[i - 1]);
    }
    CHECK(values.back() < 0.1 * values.front());
  }

  // a smoother Bessel kernel (larger s) mollifies with less L1 error
  const auto rough = compactness_diagnostic(1, 0.25, levels);
  const auto smooth = compactness_diagnostic(1, 0.75, levels);
  for (std::size_t i = 0; i < levels.size(); ++i)
    CHECK(smooth[i] < rough[i]);

  CHECK_THROWS_AS(compactness_diagnostic(1, 0.5, {4.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(compactness_diagnostic(1, 1.5, {2.0, 4.0}),
                  std::invalid_argument);
  const Grid wrong(2, 16, 5.0);
  CHECK_THROWS_AS(compactness_diagnostic(1, 0.5, {2.0, 4.0}, &wrong),
                  std::invalid_argument);
}
