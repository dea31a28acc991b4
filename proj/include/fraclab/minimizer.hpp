// Constrained minimization of E(u) = ||grad_s u||_2^2 - int F(|x|, u) over the
// L^2 sphere ||u||_2 = c: projected gradient descent with backtracking and an
// optional symmetrization step, plus the critical-mass and supercritical
// dilation probes.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fraclab/field.hpp"
#include "fraclab/generators.hpp"
#include "fraclab/nonlinearity.hpp"
#include "fraclab/rearrange.hpp"
#include "fraclab/spectral.hpp"

namespace fraclab {

struct SolverConfig {
  Grid grid{1, 256, 40.0};
  double c = 1.0;
  double s = 0.75;
  double step = 0.5;       // initial trial step, adapted between iterations
  double backtrack = 0.5;  // shrink factor during line search
  int max_iters = 30000;
  int max_backtracks = 60;
  double grad_tol = 1e-7;
  bool symmetrize = true;
  std::uint64_t seed = 0;  // 0: Gaussian start; else seeded band-limited start

  void validate() const {
    if (!(c > 0.0)) throw std::invalid_argument("solver: c must be positive");
    if (!(s > 0.0) || !(s < 1.0))
      throw std::invalid_argument("solver: s must lie in (0, 1)");
    if (!(step > 0.0)) throw std::invalid_argument("solver: step must be positive");
    if (!(backtrack > 0.0) || !(backtrack < 1.0))
      throw std::invalid_argument("solver: backtrack factor must lie in (0, 1)");
    if (max_iters < 1) throw std::invalid_argument("solver: max_iters must be >= 1");
    if (!(grad_tol > 0.0))
      throw std::invalid_argument("solver: grad_tol must be positive");
  }
};

/// E(u) = dirichlet_energy(u, s) - dx^n sum F(|x_j|, u_j).
inline double energy(const Field& u, const NonlinearitySpec& spec, double s) {
  const Grid& g = u.grid;
  std::vector<double> terms(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    terms[i] = F_eval(spec, g.radius(i), u.values[i]);
  return dirichlet_energy(u, s) -
         g.cell_volume() * detail::canonical_sum(std::move(terms));
}

/// L^2 gradient of E: 2 (-Delta)^s u - f(|x|, u).  The (-Delta)^s symbol is
/// |xi|^{2s}, hence the doubled order below.
inline Field energy_gradient(const Field& u, const NonlinearitySpec& spec,
                             double s) {
  Field grad = fractional_laplacian(u, 2.0 * s);
  const Grid& g = u.grid;
  for (std::size_t i = 0; i < g.size(); ++i)
    grad.values[i] = 2.0 * grad.values[i] - f_eval(spec, g.radius(i), u.values[i]);
  return grad;
}

inline Field project_sphere(const Field& u, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("project_sphere: c must be positive");
  const double norm = lp_norm(u, 2.0);
  if (norm == 0.0) throw std::invalid_argument("project_sphere: zero field");
  Field out = u;
  const double scale = c / norm;
  for (double& v : out.values) v *= scale;
  return out;
}

struct MinimizerReport {
  Field u_final;
  double energy = 0.0;
  double lambda = 0.0;       // Lagrange multiplier estimate -<g,u>/(2c^2)
  double el_residual = 0.0;  // ||g + 2 lambda u||_2 / ||u||_2
  double asymmetry = 0.0;
  int iterations = 0;
  bool converged = false;
  bool stalled = false;
  int symmetrization_steps = 0;
  double constraint_max_error = 0.0;  // max |(||u||_2 - c)| / c over iterates
  std::vector<double> energy_trace;
  std::string note;

  explicit MinimizerReport(Field u) : u_final(std::move(u)) {}
};

inline Field default_start(const SolverConfig& cfg) {
  Field u0 = (cfg.seed == 0)
                 ? gaussian_field(cfg.grid, cfg.grid.length() / 16.0)
                 : random_band_limited_field(cfg.grid, cfg.grid.points() / 8,
                                             cfg.seed);
  if (cfg.seed != 0)
    for (double& v : u0.values) v = std::abs(v) + 1e-3;  // keep starts mass-like
  return project_sphere(u0, cfg.c);
}

/// Projected gradient descent on the sphere S_c.  Each step projects
/// u - tau * grad back to the sphere, with tau halved until E decreases
/// sufficiently; the optional rearrangement step is accepted only when it does
/// not increase E, so the energy trace is nonincreasing by construction.
inline MinimizerReport minimize(const SolverConfig& cfg,
                                const NonlinearitySpec& spec,
                                const std::optional<Field>& u0 = std::nullopt) {
  cfg.validate();
  spec.validate();
  if (spec.n != cfg.grid.dim())
    throw std::invalid_argument("minimize: spec and grid dimension mismatch");

  Field u = u0 ? project_sphere(*u0, cfg.c) : default_start(cfg);
  const double c2 = cfg.c * cfg.c;
  double e_cur = energy(u, spec, cfg.s);

  MinimizerReport rep(u);
  rep.energy_trace.reserve(cfg.max_iters + 1);
  rep.energy_trace.push_back(e_cur);

  double tau = cfg.step;
  double lambda = 0.0, residual = 0.0;
  Field last_u = u, last_grad = u;
  bool have_last = false;
  int iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    const Field grad = energy_gradient(u, spec, cfg.s);
    lambda = -pairing(grad, u) / (2.0 * c2);
    Field tangent = grad;
    for (std::size_t i = 0; i < tangent.values.size(); ++i)
      tangent.values[i] += 2.0 * lambda * u.values[i];
    const double tangent_norm2 = pairing(tangent, tangent);
    residual = std::sqrt(tangent_norm2) / cfg.c;
    if (residual <= cfg.grad_tol) {
      rep.converged = true;
      break;
    }

    // Barzilai-Borwein trial step from the last accepted pair; backtracking
    // below keeps the trace monotone regardless.
    if (have_last) {
      double du_du = 0.0, du_dg = 0.0;
      for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double du = u.values[i] - last_u.values[i];
        du_du += du * du;
        du_dg += du * (grad.values[i] - last_grad.values[i]);
      }
      if (du_dg > 0.0 && du_du > 0.0) tau = du_du / du_dg;
    }
    last_u = u;
    last_grad = grad;
    have_last = true;

    bool accepted = false;
    tau = std::min(std::max(tau, 1e-12), 1e6);
    Field cand = u;
    double e_cand = e_cur;
    for (int bt = 0; bt <= cfg.max_backtracks; ++bt) {
      cand = u;
      for (std::size_t i = 0; i < cand.values.size(); ++i)
        cand.values[i] -= tau * grad.values[i];
      cand = project_sphere(cand, cfg.c);
      e_cand = energy(cand, spec, cfg.s);
      if (e_cand <= e_cur - 1e-4 * tau * tangent_norm2) {
        accepted = true;
        break;
      }
      tau *= cfg.backtrack;
    }
    if (!accepted) {
      // roundoff floor: keep a plain nonincrease if the Armijo margin is gone
      if (e_cand <= e_cur) {
        accepted = true;
      } else {
        rep.stalled = true;
        break;
      }
    }
    u = std::move(cand);
    e_cur = e_cand;

    if (cfg.symmetrize) {
      Field sym = schwarz_rearrange(u);
      const double e_sym = energy(sym, spec, cfg.s);
      if (e_sym <= e_cur) {
        u = std::move(sym);
        e_cur = e_sym;
        ++rep.symmetrization_steps;
      }
    }
    rep.energy_trace.push_back(e_cur);
    rep.constraint_max_error = std::max(
        rep.constraint_max_error, std::abs(lp_norm(u, 2.0) - cfg.c) / cfg.c);
  }

  if (!rep.converged && !rep.stalled) {
    // max_iters exhausted; refresh the exit diagnostics below
    const Field grad = energy_gradient(u, spec, cfg.s);
    lambda = -pairing(grad, u) / (2.0 * c2);
    Field tangent = grad;
    for (std::size_t i = 0; i < tangent.values.size(); ++i)
      tangent.values[i] += 2.0 * lambda * u.values[i];
    residual = std::sqrt(pairing(tangent, tangent)) / cfg.c;
  }

  rep.u_final = std::move(u);
  rep.energy = e_cur;
  rep.lambda = lambda;
  rep.el_residual = residual;
  rep.asymmetry = asymmetry(rep.u_final);
  rep.iterations = iter;
  if (weight(spec, 0.0) == 0.0)
    rep.note =
        "F vanishes: on the torus the constant field minimizes, unlike on R^n";
  return rep;
}

struct MassProbePoint {
  double c = 0.0;
  double seminorm_ratio = 0.0;  // final over initial ||grad_s u||_2
  bool bounded = false;
};

struct MassThresholdReport {
  std::vector<MassProbePoint> points;
  bool single_transition = false;
  double transition_c = std::nan("");  // first c flagged unbounded
  double blowup_factor = 0.0;
};

/// Bounded-iteration flow at each c; flags whether the Gagliardo seminorm
/// stayed within blowup_factor of its initial value.  Observational: small c
/// should stay bounded, large c should collapse toward the grid scale.
inline MassThresholdReport mass_threshold_probe(const NonlinearitySpec& spec,
                                                const std::vector<double>& c_list,
                                                const SolverConfig& base,
                                                double blowup_factor = 5.0,
                                                int probe_iters = 250) {
  spec.validate();
  if (criticality(spec) != Criticality::critical)
    throw std::invalid_argument("mass_threshold_probe: spec must be critical");
  if (c_list.empty())
    throw std::invalid_argument("mass_threshold_probe: empty c list");
  for (std::size_t i = 0; i < c_list.size(); ++i) {
    if (!(c_list[i] > 0.0))
      throw std::invalid_argument("mass_threshold_probe: c must be positive");
    if (i > 0 && c_list[i] <= c_list[i - 1])
      throw std::invalid_argument("mass_threshold_probe: c list must increase");
  }
  MassThresholdReport rep;
  rep.blowup_factor = blowup_factor;
  for (double c : c_list) {
    SolverConfig cfg = base;
    cfg.c = c;
    cfg.max_iters = probe_iters;
    cfg.seed = 0;
    cfg.symmetrize = base.symmetrize;
    Field u = default_start(cfg);
    const double initial = std::sqrt(dirichlet_energy(u, cfg.s));
    MinimizerReport run = minimize(cfg, spec, u);
    const double final_seminorm = std::sqrt(dirichlet_energy(run.u_final, cfg.s));
    MassProbePoint pt;
    pt.c = c;
    pt.seminorm_ratio = final_seminorm / initial;
    pt.bounded = pt.seminorm_ratio < blowup_factor;
    rep.points.push_back(pt);
  }
  bool seen_unbounded = false;
  rep.single_transition = true;
  for (const auto& pt : rep.points) {
    if (!pt.bounded && !seen_unbounded) {
      seen_unbounded = true;
      rep.transition_c = pt.c;
    } else if (pt.bounded && seen_unbounded) {
      rep.single_transition = false;
    }
  }
  return rep;
}

struct SupercriticalReport {
  std::vector<int> deltas;
  std::vector<double> energies;
  std::vector<double> masses;  // ||u_delta||_2, should match ||u||_2
  bool strictly_decreasing = false;
  bool last_negative = false;
};

/// Energies along the mass-preserving dilation family
/// u_delta(x) = delta^{n/2} u(delta x), realized by integer index resampling.
inline SupercriticalReport supercritical_probe(const NonlinearitySpec& spec,
                                               const Field& u,
                                               const std::vector<int>& deltas) {
  spec.validate();
  if (criticality(spec) != Criticality::supercritical)
    throw std::invalid_argument("supercritical_probe: spec must be supercritical");
  if (deltas.empty()) throw std::invalid_argument("supercritical_probe: empty deltas");
  SupercriticalReport rep;
  rep.deltas = deltas;
  for (int d : deltas) {
    if (d < 1 || d >= u.grid.points() / 2)
      throw std::invalid_argument(
          "supercritical_probe: delta not representable on the grid");
    Field ud = dilate(u, d);
    const double amp = std::pow(static_cast<double>(d), 0.5 * u.grid.dim());
    for (double& v : ud.values) v *= amp;
    rep.energies.push_back(energy(ud, spec, spec.s));
    rep.masses.push_back(lp_norm(ud, 2.0));
  }
  rep.strictly_decreasing = true;
  for (std::size_t i = 1; i < rep.energies.size(); ++i)
    if (!(rep.energies[i] < rep.energies[i - 1])) rep.strictly_decreasing = false;
  rep.last_negative = rep.energies.back() < 0.0;
  return rep;
}

}  // namespace fraclab
