// Order-independent compensated summation helpers.
//
// Norms, quadratures and pairings in this library sum their terms in a
// canonical (sorted) order with Neumaier compensation.  Consequence: two
// fields holding the same value multiset produce bit-identical norms, which
// is what lets the rearrangement identities and the Hardy-Littlewood pairing
// hold without a tolerance.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace fraclab::detail {

/// Neumaier-compensated sum over terms in their current order.
inline double compensated_sum(const std::vector<double>& terms) {
  double sum = 0.0, comp = 0.0;
  for (double t : terms) {
    const double next = sum + t;
    if (std::abs(sum) >= std::abs(t))
      comp += (sum - next) + t;
    else
      comp += (t - next) + sum;
    sum = next;
  }
  return sum + comp;
}

/// Compensated sum in canonical (value-sorted) order.  Destroys `terms`.
inline double canonical_sum(std::vector<double>&& terms) {
  std::sort(terms.begin(), terms.end());
  return compensated_sum(terms);
}

/// Weighted inner product sum(u_i * v_i) with exact products (fma split) and
/// canonical ordering of the high parts; sign-exact whenever the product
/// multisets are comparable at double-double resolution.
inline double canonical_dot(const std::vector<double>& u,
                            const std::vector<double>& v) {
  const std::size_t n = u.size();
  std::vector<std::pair<double, double>> prod(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = u[i] * v[i];
    const double e = std::fma(u[i], v[i], -p);
    prod[i] = {p, e};
  }
  std::sort(prod.begin(), prod.end());
  double sum = 0.0, comp = 0.0, residual = 0.0;
  for (const auto& [p, e] : prod) {
    const double next = sum + p;
    if (std::abs(sum) >= std::abs(p))
      comp += (sum - next) + p;
    else
      comp += (p - next) + sum;
    sum = next;
    residual += e;
  }
  return (sum + comp) + residual;
}

}  // namespace fraclab::detail
