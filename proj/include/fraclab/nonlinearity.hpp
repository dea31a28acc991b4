// Weighted power nonlinearities F(r,u) = a(r) |u|^{l+2} / (l+2) with
// nonincreasing radial weight a, their u-derivative f, criticality
// classification against 4s/n, and samplers for the structural assumptions
// (sign/growth/smallness/supermodularity) the minimizer relies on.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fraclab {

enum class WeightProfile { constant, exponential, inverse_power };

inline const char* profile_name(WeightProfile p) {
  switch (p) {
    case WeightProfile::constant: return "const";
    case WeightProfile::exponential: return "exp";
    default: return "invpow";
  }
}

inline WeightProfile profile_from_name(const std::string& name) {
  if (name == "const") return WeightProfile::constant;
  if (name == "exp") return WeightProfile::exponential;
  if (name == "invpow") return WeightProfile::inverse_power;
  throw std::invalid_argument("unknown weight profile: " + name);
}

/// F(r,u) = a(r) |u|^{l+2}/(l+2).  Profiles for a:
///   const: a(r) = params[0]            (default 1)
///   exp:   a(r) = exp(-params[0] r)
///   invpow: a(r) = (1+r)^{-params[0]}
/// All are bounded, nonnegative and nonincreasing for nonnegative parameters.
struct NonlinearitySpec {
  double l = 1.0;
  double K = 1.0;
  WeightProfile profile = WeightProfile::constant;
  std::vector<double> params;
  // context for the criticality comparison l vs 4s/n
  double s = 0.5;
  int n = 1;

  void validate() const {
    if (!(l > 0.0)) throw std::invalid_argument("nonlinearity: l must be positive");
    if (!(K > 0.0)) throw std::invalid_argument("nonlinearity: K must be positive");
    if (!(s > 0.0) || !(s < 1.0))
      throw std::invalid_argument("nonlinearity: s must lie in (0, 1)");
    if (n < 1 || n > 3) throw std::invalid_argument("nonlinearity: n must be 1, 2 or 3");
    for (double p : params)
      if (!(p >= 0.0))
        throw std::invalid_argument("nonlinearity: profile parameters must be >= 0");
  }

  double param0(double fallback) const {
    return params.empty() ? fallback : params[0];
  }

  static NonlinearitySpec power(double l, double K, double s, int n) {
    NonlinearitySpec spec;
    spec.l = l;
    spec.K = K;
    spec.s = s;
    spec.n = n;
    spec.validate();
    return spec;
  }
};

inline double weight(const NonlinearitySpec& spec, double r) {
  switch (spec.profile) {
    case WeightProfile::constant: return spec.param0(1.0);
    case WeightProfile::exponential: return std::exp(-spec.param0(1.0) * r);
    default: return std::pow(1.0 + r, -spec.param0(1.0));
  }
}

inline double F_eval(const NonlinearitySpec& spec, double r, double u) {
  return weight(spec, r) * std::pow(std::abs(u), spec.l + 2.0) / (spec.l + 2.0);
}

/// Pointwise u-derivative of F_eval.
inline double f_eval(const NonlinearitySpec& spec, double r, double u) {
  return weight(spec, r) * std::pow(std::abs(u), spec.l) * u;
}

enum class Criticality { subcritical, critical, supercritical };

inline const char* criticality_name(Criticality c) {
  switch (c) {
    case Criticality::subcritical: return "subcritical";
    case Criticality::critical: return "critical";
    default: return "supercritical";
  }
}

inline Criticality criticality(const NonlinearitySpec& spec) {
  const double threshold = 4.0 * spec.s / spec.n;
  if (spec.l < threshold) return Criticality::subcritical;
  if (spec.l > threshold) return Criticality::supercritical;
  return Criticality::critical;
}

/// One-line serialization; s and n travel in the enclosing config.
inline std::string serialize_spec(const NonlinearitySpec& spec) {
  std::ostringstream os;
  os.precision(17);
  os << "family=weighted_power l=" << spec.l << " K=" << spec.K
     << " a=" << profile_name(spec.profile) << " params=";
  for (std::size_t i = 0; i < spec.params.size(); ++i) {
    if (i) os << ',';
    os << spec.params[i];
  }
  return os.str();
}

/// Rebuild a spec from the key=value fields of the serialized block.
/// Missing keys keep defaults; s and n must be patched in by the caller.
inline NonlinearitySpec parse_spec_fields(
    const std::map<std::string, std::string>& kv) {
  NonlinearitySpec spec;
  auto it = kv.find("family");
  if (it != kv.end() && it->second != "weighted_power")
    throw std::invalid_argument("unknown nonlinearity family: " + it->second);
  if ((it = kv.find("l")) != kv.end()) spec.l = std::stod(it->second);
  if ((it = kv.find("K")) != kv.end()) spec.K = std::stod(it->second);
  if ((it = kv.find("a")) != kv.end()) spec.profile = profile_from_name(it->second);
  if ((it = kv.find("params")) != kv.end() && !it->second.empty()) {
    std::istringstream is(it->second);
    std::string tok;
    while (std::getline(is, tok, ',')) spec.params.push_back(std::stod(tok));
  }
  return spec;
}

struct SamplerConfig {
  int radii = 64;
  double r_min = 1e-3;
  double r_max = 1e3;  // log-spaced radii
  int amplitudes = 64;
  double u_max = 10.0;  // linear amplitudes in [0, u_max]
  int random_pairs = 256;
  std::uint64_t seed = 7;
  std::vector<double> epsilon_ladder = {1e-1, 1e-2, 1e-3, 1e-4};
};

/// A sample where an inequality check compared lhs against rhs.
struct Witness {
  double r = 0.0, u = 0.0;
  double lhs = 0.0, rhs = 0.0;
};

/// A rectangle r < R, a < A used by the supermodularity check.
struct RectangleWitness {
  double r = 0.0, R = 0.0, a = 0.0, A = 0.0;
  double lhs = 0.0, rhs = 0.0;
};

struct EpsilonEntry {
  double epsilon = 0.0;
  bool found = false;
  double r0 = 0.0, s0 = 0.0;  // valid when found
  Witness witness;            // violation at the most permissive failed pair
};

struct AssumptionReport {
  bool f0_assumed = true;  // Caratheodory holds by construction (closed form)
  bool f1 = false;
  Witness f1_witness;
  bool f2 = false;
  Witness f2_witness;
  bool f3 = false;
  std::vector<EpsilonEntry> f3_ladder;
  // displayed orientation: F(r,a) + F(R,A) >= F(r,A) + F(R,a) for r < R, a < A
  bool f4_displayed = false;
  bool f4_displayed_strict = false;
  RectangleWitness f4_displayed_witness;
  // reciprocal orientation: supermodularity of (t,y) -> F(1/t, y), which
  // reverses the radial comparison
  bool f4_reciprocal = false;
  bool f4_reciprocal_strict = false;
  RectangleWitness f4_reciprocal_witness;
  std::string note =
      "F4 checked in both the displayed (r,R,a,A) orientation and the "
      "reciprocal 1/t orientation; they differ for strictly decreasing "
      "weights";

  bool all_core() const { return f1 && f2 && f3; }
};

namespace detail {

inline std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> out(count);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < count; ++i)
    out[i] = std::exp(a + (b - a) * i / (count - 1));
  return out;
}

inline std::vector<double> lin_spaced(double hi, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = hi * i / (count - 1);
  return out;
}

}  // namespace detail

/// Deterministic sweep over the sampler grids plus seeded random pairs.
/// Failures populate witnesses; they never throw.
inline AssumptionReport check_assumptions(const NonlinearitySpec& spec,
                                          const SamplerConfig& cfg = {}) {
  spec.validate();
  if (cfg.radii < 2 || cfg.amplitudes < 2)
    throw std::invalid_argument("check_assumptions: need at least 2 samples per axis");
  AssumptionReport rep;
  const std::vector<double> radii =
      detail::log_spaced(cfg.r_min, cfg.r_max, cfg.radii);
  const std::vector<double> amps = detail::lin_spaced(cfg.u_max, cfg.amplitudes);

  // F1 on signed samples: grid with both signs, then random pairs
  rep.f1 = true;
  auto check_f1 = [&](double r, double u) {
    const double lhs = F_eval(spec, r, u);
    const double rhs = F_eval(spec, r, std::abs(u));
    if (lhs > rhs && rep.f1) {
      rep.f1 = false;
      rep.f1_witness = {r, u, lhs, rhs};
    }
  };
  for (double r : radii)
    for (double u : amps) {
      check_f1(r, u);
      check_f1(r, -u);
    }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lr_min = std::log(cfg.r_min), lr_max = std::log(cfg.r_max);
  for (int i = 0; i < cfg.random_pairs; ++i) {
    const double r = std::exp(lr_min + (lr_max - lr_min) * unit(rng));
    const double u = cfg.u_max * (2.0 * unit(rng) - 1.0);
    check_f1(r, u);
  }

  // F2 on nonnegative samples: 0 <= F <= K (u^2 + u^{l+2})
  rep.f2 = true;
  for (double r : radii)
    for (double u : amps) {
      const double value = F_eval(spec, r, u);
      const double bound = spec.K * (u * u + std::pow(u, spec.l + 2.0));
      if ((value < 0.0 || value > bound) && rep.f2) {
        rep.f2 = false;
        rep.f2_witness = {r, u, value, bound};
      }
    }

  // F3: for each epsilon find (R0, s0) with F(r,u) <= eps u^2 for all sampled
  // r >= R0, 0 <= u < s0.  ok[i][j] records the pointwise test.
  rep.f3 = true;
  std::vector<std::vector<bool>> ok(cfg.radii, std::vector<bool>(cfg.amplitudes));
  for (double eps : cfg.epsilon_ladder) {
    for (int i = 0; i < cfg.radii; ++i)
      for (int j = 0; j < cfg.amplitudes; ++j)
        ok[i][j] = F_eval(spec, radii[i], amps[j]) <= eps * amps[j] * amps[j];
    EpsilonEntry entry;
    entry.epsilon = eps;
    // prefer the largest s0, then the smallest R0
    for (int b = cfg.amplitudes; b >= 1 && !entry.found; --b) {
      for (int a = 0; a < cfg.radii && !entry.found; ++a) {
        bool pass = true;
        for (int i = a; i < cfg.radii && pass; ++i)
          for (int j = 0; j < b && pass; ++j) pass = ok[i][j];
        if (pass) {
          entry.found = true;
          entry.r0 = radii[a];
          entry.s0 = (b < cfg.amplitudes)
                         ? amps[b]
                         : cfg.u_max * (1.0 + 1.0 / cfg.amplitudes);
        }
      }
    }
    if (!entry.found) {
      rep.f3 = false;
      // violation at the most permissive corner: largest radius, smallest
      // positive amplitude
      const double r = radii[cfg.radii - 1], u = amps[1];
      entry.witness = {r, u, F_eval(spec, r, u), eps * u * u};
    }
    rep.f3_ladder.push_back(entry);
  }

  // F4 on rectangles from the sample grids (strided to keep the sweep small)
  const int stride_r = std::max(1, cfg.radii / 16);
  const int stride_u = std::max(1, cfg.amplitudes / 16);
  rep.f4_displayed = rep.f4_reciprocal = true;
  rep.f4_displayed_strict = rep.f4_reciprocal_strict = true;
  for (int i = 0; i < cfg.radii; i += stride_r)
    for (int j = i + stride_r; j < cfg.radii; j += stride_r)
      for (int k = 1; k < cfg.amplitudes; k += stride_u)
        for (int m = k + stride_u; m < cfg.amplitudes; m += stride_u) {
          const double r = radii[i], R = radii[j];
          const double a = amps[k], A = amps[m];
          const double lhs = F_eval(spec, r, a) + F_eval(spec, R, A);
          const double rhs = F_eval(spec, r, A) + F_eval(spec, R, a);
          if (lhs < rhs && rep.f4_displayed) {
            rep.f4_displayed = false;
            rep.f4_displayed_witness = {r, R, a, A, lhs, rhs};
          }
          if (lhs <= rhs) rep.f4_displayed_strict = false;
          // reciprocal orientation: t = 1/r swaps the radial roles
          const double lhs2 = F_eval(spec, R, a) + F_eval(spec, r, A);
          const double rhs2 = F_eval(spec, R, A) + F_eval(spec, r, a);
          if (lhs2 < rhs2 && rep.f4_reciprocal) {
            rep.f4_reciprocal = false;
            rep.f4_reciprocal_witness = {r, R, a, A, lhs2, rhs2};
          }
          if (lhs2 <= rhs2) rep.f4_reciprocal_strict = false;
        }
  return rep;
}

}  // namespace fraclab
