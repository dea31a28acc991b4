// fraclab command line front end: certifiers, probes, and the constrained
// minimizer behind one reproducible interface.  Every invocation emits
// exactly one run record line; batch mode runs a manifest of such
// invocations in parallel and keeps the output in manifest order.
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fraclab/fraclab.hpp"

namespace {

using namespace fraclab;

struct RunRequest {
  std::string subcommand;
  std::string config_path;
  std::string field_path;
  std::string out_path;
  std::string csv_path;
  std::string save_field_path;
  std::uint64_t seed = 0;
  std::string grid_str;
  std::optional<double> s, p, q, r, c, tol;
  std::optional<double> xi2, constant, blowup;
  std::optional<double> sigma, radius, height, separation, amp, sigma_k;
  std::optional<double> nl_l, nl_K;
  std::optional<int> terms, bessel_k, kmax, probe_iters;
  std::string gen = "gaussian";
  std::string nl_a;      // weight profile name
  std::string nl_params; // comma separated weight parameters
  std::string levels_str, c_list_str, deltas_str;
};

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& what) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad " + what + " entry: '" + tok + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument(what + " list is empty");
  return out;
}

Grid parse_grid_flag(const std::string& text) {
  int n = 0, N = 0;
  double L = 0.0;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> n >> c1 >> N >> c2 >> L) || c1 != ',' || c2 != ',')
    throw std::invalid_argument("bad --grid value '" + text +
                                "': expected n,N,L");
  std::string extra;
  if (is >> extra) throw std::invalid_argument("trailing text in --grid");
  return Grid(n, N, L);
}

std::string sanitize(const std::string& text) {
  std::string out = text;
  for (char& ch : out)
    if (ch == ' ' || ch == '\t' || ch == '\n') ch = '_';
  return out;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  return out;
}

// The effective run setup after merging config file, defaults and flags.
struct Resolved {
  RunConfig rc;
  bool have_grid = false;
};

Resolved resolve_config(const RunRequest& req, const Grid& default_grid) {
  Resolved res;
  if (!req.config_path.empty()) {
    res.rc = load_config(req.config_path);
    res.have_grid = true;
  } else {
    res.rc.solver.grid = default_grid;
  }
  if (!req.grid_str.empty()) {
    res.rc.solver.grid = parse_grid_flag(req.grid_str);
    res.have_grid = true;
  }
  if (req.c) res.rc.solver.c = *req.c;
  if (req.s) res.rc.solver.s = *req.s;
  if (req.tol) res.rc.solver.grad_tol = *req.tol;
  if (req.seed) res.rc.solver.seed = req.seed;
  if (req.nl_l) res.rc.spec.l = *req.nl_l;
  if (req.nl_K) res.rc.spec.K = *req.nl_K;
  if (!req.nl_a.empty()) res.rc.spec.profile = profile_from_name(req.nl_a);
  if (!req.nl_params.empty())
    res.rc.spec.params = parse_double_list(req.nl_params, "params");
  res.rc.spec.s = res.rc.solver.s;
  res.rc.spec.n = res.rc.solver.grid.dim();
  return res;
}

Grid grid_for(const RunRequest& req, const Grid& fallback) {
  if (!req.grid_str.empty()) return parse_grid_flag(req.grid_str);
  return fallback;
}

std::string field_descriptor(const RunRequest& req, const Grid& g) {
  if (!req.field_path.empty()) return "file:" + req.field_path;
  std::ostringstream os;
  os << "gen:" << req.gen;
  if (req.sigma) os << ":sigma=" << format_double(*req.sigma);
  if (req.radius) os << ":radius=" << format_double(*req.radius);
  if (req.separation) os << ":sep=" << format_double(*req.separation);
  if (req.amp) os << ":amp=" << format_double(*req.amp);
  if (req.kmax) os << ":k=" << *req.kmax;
  if (req.sigma_k) os << ":sigma_k=" << format_double(*req.sigma_k);
  os << ":grid=" << g.describe();
  return os.str();
}

Field make_field(const RunRequest& req, const Grid& g) {
  if (!req.field_path.empty()) {
    Field u = read_field(req.field_path);
    if (!req.grid_str.empty() && !(u.grid == g))
      throw std::invalid_argument("--grid disagrees with field file header");
    return u;
  }
  const double L = g.length();
  if (req.gen == "gaussian")
    return gaussian_field(g, req.sigma.value_or(L / 16.0),
                          req.amp.value_or(1.0));
  if (req.gen == "bump")
    return bump_field(g, req.radius.value_or(L / 8.0), req.amp.value_or(1.0));
  if (req.gen == "two-bump")
    return two_bump_field(g, req.radius.value_or(L / 12.0),
                          req.separation.value_or(L / 3.0),
                          req.amp.value_or(1.0));
  if (req.gen == "indicator")
    return ball_indicator_field(g, req.radius.value_or(L / 8.0),
                                req.amp.value_or(1.0));
  if (req.gen == "random")
    return random_band_limited_field(g, req.kmax.value_or(g.points() / 8),
                                     req.seed == 0 ? 1 : req.seed);
  if (req.gen == "spectral-bump")
    return spectral_bump_field(g, req.kmax.value_or(48),
                               req.sigma_k.value_or(12.0));
  throw std::invalid_argument("unknown generator '" + req.gen + "'");
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << header << '\n';
  for (const auto& row : rows) os << row << '\n';
}

// ---------------------------------------------------------------- commands

RunRecord exec_verify_ps(const RunRequest& req, bool interactive) {
  (void)interactive;
  const Grid g = grid_for(req, Grid(1, 256, 40.0));
  const double s = req.s.value_or(0.5);
  const double tol = req.tol.value_or(1e-3);
  const Field u = make_field(req, g);
  const CertificateReport rep = polya_szego_certify(u, s, tol);
  RunRecord rec;
  rec.subcommand = "verify-ps";
  rec.seed = req.seed;
  rec.config_hash = fnv1a("verify-ps|" + g.describe() + "|s=" +
                          format_double(s) + "|tol=" + format_double(tol) +
                          "|" + field_descriptor(req, g));
  rec.outcome = rep.satisfied ? Outcome::certified : Outcome::violated;
  rec.payload = certificate_payload(rep);
  if (!req.csv_path.empty())
    write_csv(req.csv_path, payload_csv_header(rec.payload),
              {payload_csv_row(rec.payload)});
  return rec;
}

RunRecord exec_verify_gn(const RunRequest& req, bool interactive) {
  (void)interactive;
  const Grid g = grid_for(req, Grid(1, 512, 40.0));
  const double s = req.s.value_or(0.5);
  const double p = req.p.value_or(2.0);
  const double r = req.r.value_or(2.0);
  const double q = req.q.value_or(4.0);
  const double constant = req.constant.value_or(10.0);
  const double tol = req.tol.value_or(0.0);
  const GNIndexSet idx = gn_indices_solve(g.dim(), s, p, r, q, q);
  const Field u = make_field(req, g);
  const CertificateReport rep = gn_certify(u, idx, constant, tol);
  RunRecord rec;
  rec.subcommand = "verify-gn";
  rec.seed = req.seed;
  rec.config_hash =
      fnv1a("verify-gn|" + g.describe() + "|s=" + format_double(s) +
            "|p=" + format_double(p) + "|q=" + format_double(q) +
            "|r=" + format_double(r) + "|C=" + format_double(constant) +
            "|tol=" + format_double(tol) + "|" + field_descriptor(req, g));
  rec.outcome = rep.satisfied ? Outcome::certified : Outcome::violated;
  rec.payload = certificate_payload(rep);
  if (!req.csv_path.empty())
    write_csv(req.csv_path, payload_csv_header(rec.payload),
              {payload_csv_row(rec.payload)});
  return rec;
}

RunRecord exec_sobolev_const(const RunRequest& req, bool interactive) {
  const Grid g = grid_for(req, Grid(2, 64, 10.0));
  const double s = req.s.value_or(1.0);
  const double value = sharp_sobolev_constant(g.dim(), s);
  if (interactive) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16g", value);
    std::cout << buf << '\n';
  }
  RunRecord rec;
  rec.subcommand = "sobolev-const";
  rec.seed = req.seed;
  rec.config_hash = fnv1a("sobolev-const|n=" + std::to_string(g.dim()) +
                          "|s=" + format_double(s));
  rec.outcome = Outcome::certified;
  rec.add("n", g.dim());
  rec.add("s", s);
  rec.add("value", value);
  return rec;
}

RunRecord exec_series_check(const RunRequest& req, bool interactive) {
  (void)interactive;
  const double xi2 = req.xi2.value_or(1.0);
  const double s = req.s.value_or(0.5);
  const int terms = req.terms.value_or(20);
  const double tol = req.tol.value_or(1e-5);
  const SeriesCheck sc = multiplier_series_check(xi2, s, terms);
  bool monotone = true, positive = true;
  double prev_err = std::numeric_limits<double>::infinity();
  for (const auto& t : sc.terms) {
    if (t.coefficient <= 0.0) positive = false;
    const double err = std::abs(t.partial - sc.limit);
    if (err > prev_err + 1e-15) monotone = false;
    prev_err = err;
  }
  const double final_err = std::abs(sc.partial - sc.limit);
  RunRecord rec;
  rec.subcommand = "series-check";
  rec.seed = req.seed;
  rec.config_hash = fnv1a("series-check|xi2=" + format_double(xi2) +
                          "|s=" + format_double(s) +
                          "|terms=" + std::to_string(terms) +
                          "|tol=" + format_double(tol));
  rec.outcome = (monotone && positive && final_err <= tol)
                    ? Outcome::certified
                    : Outcome::violated;
  rec.add("xi2", xi2);
  rec.add("s", s);
  rec.add("terms", terms);
  rec.add("limit", sc.limit);
  rec.add("partial", sc.partial);
  rec.add("error", final_err);
  rec.add_flag("monotone", monotone);
  rec.add_flag("coefficients_positive", positive);
  if (!req.csv_path.empty()) {
    std::vector<std::string> rows;
    for (const auto& t : sc.terms)
      rows.push_back(std::to_string(t.k) + ',' + format_double(t.coefficient) +
                     ',' + format_double(t.term) + ',' +
                     format_double(t.partial));
    write_csv(req.csv_path, "k,coefficient,term,partial", rows);
  }
  return rec;
}

RunRecord exec_pairing_check(const RunRequest& req, bool interactive) {
  (void)interactive;
  const Grid g = grid_for(req, Grid(1, 256, 40.0));
  const int k = req.bessel_k.value_or(1);
  const double tol = req.tol.value_or(1e-10);
  RunRequest with_default = req;
  if (req.field_path.empty() && req.gen == "gaussian" && !req.sigma &&
      !req.amp)
    with_default.gen = "two-bump";  // default probe field is asymmetric
  const Field u = make_field(with_default, g);
  const CertificateReport rep = bessel_pairing_check(u, k, tol);
  RunRecord rec;
  rec.subcommand = "pairing-check";
  rec.seed = req.seed;
  rec.config_hash = fnv1a("pairing-check|" + g.describe() +
                          "|k=" + std::to_string(k) + "|tol=" +
                          format_double(tol) + "|" +
                          field_descriptor(with_default, g));
  rec.outcome = rep.satisfied ? Outcome::certified : Outcome::violated;
  rec.payload = certificate_payload(rep);
  return rec;
}

RunRecord exec_compactness(const RunRequest& req, bool interactive) {
  (void)interactive;
  const double s = req.s.value_or(0.5);
  std::vector<double> levels =
      parse_double_list(req.levels_str.empty() ? "2,4,8,16" : req.levels_str,
                        "levels");
  std::optional<Grid> override_grid;
  if (!req.grid_str.empty()) override_grid = parse_grid_flag(req.grid_str);
  const int n = override_grid ? override_grid->dim() : 1;
  const std::vector<double> values = compactness_diagnostic(
      n, s, levels, override_grid ? &*override_grid : nullptr);
  bool decreasing = true;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] < values[i - 1])) decreasing = false;
  RunRecord rec;
  rec.subcommand = "compactness";
  rec.seed = req.seed;
  rec.config_hash = fnv1a("compactness|n=" + std::to_string(n) +
                          "|s=" + format_double(s) +
                          "|levels=" + join_doubles(levels));
  rec.outcome = decreasing ? Outcome::certified : Outcome::violated;
  rec.add("n", n);
  rec.add("s", s);
  rec.add("levels", join_doubles(levels));
  rec.add("values", join_doubles(values));
  rec.add("first", values.front());
  rec.add("final", values.back());
  rec.add_flag("decreasing", decreasing);
  if (!req.csv_path.empty()) {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < levels.size(); ++i)
      rows.push_back(format_double(levels[i]) + ',' + format_double(values[i]));
    write_csv(req.csv_path, "level,l1_difference", rows);
  }
  return rec;
}

RunRecord exec_check_F(const RunRequest& req, bool interactive) {
  (void)interactive;
  const Resolved res = resolve_config(req, Grid(1, 256, 40.0));
  const NonlinearitySpec& spec = res.rc.spec;
  const AssumptionReport rep = check_assumptions(spec);
  const bool ok = rep.all_core() && (rep.f4_displayed || rep.f4_reciprocal);
  RunRecord rec;
  rec.subcommand = "check-F";
  rec.seed = req.seed;
  rec.config_hash =
      fnv1a("check-F|" + serialize_spec(spec) + "|s=" + format_double(spec.s) +
            "|n=" + std::to_string(spec.n));
  rec.outcome = ok ? Outcome::certified : Outcome::violated;
  rec.add("family", "weighted_power");
  rec.add("l", spec.l);
  rec.add("K", spec.K);
  rec.add("a", profile_name(spec.profile));
  rec.add("criticality", criticality_name(criticality(spec)));
  rec.add_flag("F1", rep.f1);
  rec.add_flag("F2", rep.f2);
  rec.add_flag("F3", rep.f3);
  rec.add_flag("F4_displayed", rep.f4_displayed);
  rec.add_flag("F4_reciprocal", rep.f4_reciprocal);
  rec.add_flag("F4_displayed_strict", rep.f4_displayed_strict);
  rec.add_flag("F4_reciprocal_strict", rep.f4_reciprocal_strict);
  if (!rep.f2)
    rec.add("F2_witness",
            format_double(rep.f2_witness.r) + "," +
                format_double(rep.f2_witness.u) + "," +
                format_double(rep.f2_witness.lhs) + ">" +
                format_double(rep.f2_witness.rhs));
  return rec;
}

RunRecord exec_minimize(const RunRequest& req, bool interactive) {
  (void)interactive;
  const Resolved res = resolve_config(req, Grid(1, 256, 40.0));
  const MinimizerReport rep = minimize(res.rc.solver, res.rc.spec);
  RunRecord rec;
  rec.subcommand = "minimize";
  rec.seed = res.rc.solver.seed;
  RunConfig canon = res.rc;
  canon.solver.seed = 0;  // seed is tracked separately in the record
  rec.config_hash = fnv1a("minimize|" + serialize_config(canon));
  rec.outcome = rep.converged ? Outcome::converged : Outcome::flagged;
  rec.add("energy", rep.energy);
  rec.add("lambda", rep.lambda);
  rec.add("residual", rep.el_residual);
  rec.add("asymmetry", rep.asymmetry);
  rec.add("iters", rep.iterations);
  rec.add_flag("converged", rep.converged);
  rec.add_flag("stalled", rep.stalled);
  rec.add("sym_steps", rep.symmetrization_steps);
  rec.add("constraint_max_err", rep.constraint_max_error);
  if (!req.save_field_path.empty()) write_field(req.save_field_path, rep.u_final);
  if (!req.csv_path.empty()) {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < rep.energy_trace.size(); ++i)
      rows.push_back(std::to_string(i) + ',' +
                     format_double(rep.energy_trace[i]));
    write_csv(req.csv_path, "iter,energy", rows);
  }
  return rec;
}

RunRecord exec_probe_mass(const RunRequest& req, bool interactive) {
  (void)interactive;
  Resolved res = resolve_config(req, Grid(1, 1024, 20.0));
  res.rc.solver.s = req.s.value_or(res.rc.solver.s);
  // default to the exactly critical exponent when l is not pinned
  if (!req.nl_l && req.config_path.empty())
    res.rc.spec.l = 4.0 * res.rc.solver.s / res.rc.solver.grid.dim();
  res.rc.spec.s = res.rc.solver.s;
  const std::vector<double> c_list = parse_double_list(
      req.c_list_str.empty() ? "0.001,0.01,0.1,1,10,100,1000"
                             : req.c_list_str,
      "c");
  const double blowup = req.blowup.value_or(5.0);
  const int iters = req.probe_iters.value_or(250);
  const MassThresholdReport rep =
      mass_threshold_probe(res.rc.spec, c_list, res.rc.solver, blowup, iters);
  bool any_bounded = false, any_unbounded = false;
  std::string flags, ratios;
  for (const auto& pt : rep.points) {
    if (!flags.empty()) flags += ',';
    if (!ratios.empty()) ratios += ',';
    flags += pt.bounded ? '1' : '0';
    ratios += format_double(pt.seminorm_ratio);
    (pt.bounded ? any_bounded : any_unbounded) = true;
  }
  const bool transition =
      rep.single_transition && any_bounded && any_unbounded;
  RunRecord rec;
  rec.subcommand = "probe-mass";
  rec.seed = req.seed;
  rec.config_hash = fnv1a("probe-mass|" + serialize_config(res.rc) +
                          "|c=" + join_doubles(c_list) +
                          "|blowup=" + format_double(blowup) +
                          "|iters=" + std::to_string(iters));
  rec.outcome = transition ? Outcome::certified : Outcome::flagged;
  rec.add("l", res.rc.spec.l);
  rec.add("s", res.rc.solver.s);
  rec.add("c_list", join_doubles(c_list));
  rec.add("ratios", ratios);
  rec.add("bounded", flags);
  rec.add_flag("single_transition", rep.single_transition);
  rec.add("transition_c", rep.transition_c);
  rec.add("blowup_factor", blowup);
  if (!req.csv_path.empty()) {
    std::vector<std::string> rows;
    for (const auto& pt : rep.points)
      rows.push_back(format_double(pt.c) + ',' +
                     format_double(pt.seminorm_ratio) + ',' +
                     (pt.bounded ? "1" : "0"));
    write_csv(req.csv_path, "c,seminorm_ratio,bounded", rows);
  }
  return rec;
}

RunRecord exec_probe_super(const RunRequest& req, bool interactive) {
  (void)interactive;
  Resolved res = resolve_config(req, Grid(1, 1024, 40.0));
  res.rc.solver.s = req.s.value_or(0.5);
  if (!req.nl_l && req.config_path.empty()) res.rc.spec.l = 3.0;
  res.rc.spec.s = res.rc.solver.s;
  const std::vector<double> dl = parse_double_list(
      req.deltas_str.empty() ? "1,2,4,8" : req.deltas_str, "deltas");
  std::vector<int> deltas;
  for (double d : dl) {
    if (d < 1.0 || d != std::floor(d))
      throw std::invalid_argument("deltas must be integers >= 1");
    deltas.push_back(static_cast<int>(d));
  }
  RunRequest with_default = req;
  if (req.field_path.empty() && !req.sigma && !req.amp) {
    with_default.sigma = 1.0;
    with_default.amp = 2.0;
  }
  const Field u = make_field(with_default, res.rc.solver.grid);
  const SupercriticalReport rep = supercritical_probe(res.rc.spec, u, deltas);
  RunRecord rec;
  rec.subcommand = "probe-super";
  rec.seed = req.seed;
  rec.config_hash =
      fnv1a("probe-super|" + serialize_config(res.rc) + "|deltas=" +
            join_doubles(dl) + "|" +
            field_descriptor(with_default, res.rc.solver.grid));
  rec.outcome = (rep.strictly_decreasing && rep.last_negative)
                    ? Outcome::certified
                    : Outcome::violated;
  rec.add("l", res.rc.spec.l);
  rec.add("s", res.rc.solver.s);
  rec.add("deltas", join_doubles(dl));
  rec.add("energies", join_doubles(rep.energies));
  rec.add("masses", join_doubles(rep.masses));
  rec.add_flag("strictly_decreasing", rep.strictly_decreasing);
  rec.add_flag("last_negative", rep.last_negative);
  if (!req.csv_path.empty()) {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < rep.energies.size(); ++i)
      rows.push_back(std::to_string(rep.deltas[i]) + ',' +
                     format_double(rep.energies[i]) + ',' +
                     format_double(rep.masses[i]));
    write_csv(req.csv_path, "delta,energy,mass", rows);
  }
  return rec;
}

RunRecord execute(const RunRequest& req, bool interactive) {
  const auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  if (req.subcommand == "verify-ps") rec = exec_verify_ps(req, interactive);
  else if (req.subcommand == "verify-gn") rec = exec_verify_gn(req, interactive);
  else if (req.subcommand == "sobolev-const") rec = exec_sobolev_const(req, interactive);
  else if (req.subcommand == "series-check") rec = exec_series_check(req, interactive);
  else if (req.subcommand == "pairing-check") rec = exec_pairing_check(req, interactive);
  else if (req.subcommand == "compactness") rec = exec_compactness(req, interactive);
  else if (req.subcommand == "check-F") rec = exec_check_F(req, interactive);
  else if (req.subcommand == "minimize") rec = exec_minimize(req, interactive);
  else if (req.subcommand == "probe-mass") rec = exec_probe_mass(req, interactive);
  else if (req.subcommand == "probe-super") rec = exec_probe_super(req, interactive);
  else throw std::invalid_argument("unknown subcommand " + req.subcommand);
  rec.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
  return rec;
}

void emit_record(const RunRecord& rec, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << serialize_record(rec) << '\n';
    return;
  }
  std::ofstream os(out_path);
  if (!os) throw std::runtime_error("cannot open " + out_path);
  os << serialize_record(rec) << '\n';
}

// ------------------------------------------------------------- CLI plumbing

void add_run_options(CLI::App* sub, RunRequest& req) {
  sub->add_option("--config", req.config_path, "config file (INI sections)");
  sub->add_option("--field", req.field_path, "input field file");
  sub->add_option("--out", req.out_path, "record output path (default stdout)");
  sub->add_option("--seed", req.seed, "random seed");
  sub->add_option("--grid", req.grid_str, "grid as n,N,L");
  sub->add_option("--s", req.s, "fractional order");
  sub->add_option("--p", req.p, "exponent p");
  sub->add_option("--q", req.q, "exponent q");
  sub->add_option("--r", req.r, "exponent r");
  sub->add_option("--c", req.c, "constraint level");
  sub->add_option("--tol", req.tol, "tolerance");
  sub->add_option("--csv", req.csv_path, "CSV trace output path");
  sub->add_option("--gen", req.gen,
                  "generator: gaussian|bump|two-bump|indicator|random|"
                  "spectral-bump");
  sub->add_option("--sigma", req.sigma, "gaussian width");
  sub->add_option("--radius", req.radius, "bump/indicator radius");
  sub->add_option("--separation", req.separation, "two-bump separation");
  sub->add_option("--amp", req.amp, "generator amplitude");
  sub->add_option("--k", req.kmax, "band limit for random/spectral-bump");
  sub->add_option("--sigma-k", req.sigma_k, "spectral-bump width (modes)");
  sub->add_option("--l", req.nl_l, "nonlinearity growth exponent");
  sub->add_option("--K", req.nl_K, "nonlinearity growth constant");
  sub->add_option("--a", req.nl_a, "weight profile: const|exp|invpow");
  sub->add_option("--params", req.nl_params, "weight parameters (comma list)");
}

std::unique_ptr<CLI::App> build_app(RunRequest& req) {
  auto app = std::make_unique<CLI::App>(
      "fraclab: certifiers and solvers for fractional functional "
      "inequalities");
  app->require_subcommand(1);
  struct Cmd {
    const char* name;
    const char* help;
  };
  const Cmd cmds[] = {
      {"verify-ps", "certify the rearrangement energy inequality"},
      {"verify-gn", "certify the interpolation inequality"},
      {"sobolev-const", "print the sharp Sobolev constant"},
      {"series-check", "partial sums of the multiplier series"},
      {"pairing-check", "Bessel pairing under rearrangement"},
      {"compactness", "mollifier convergence diagnostic"},
      {"check-F", "sample the nonlinearity assumptions"},
      {"minimize", "constrained ground-state solve"},
      {"probe-mass", "critical-mass transition probe"},
      {"probe-super", "supercritical dilation probe"},
  };
  for (const auto& c : cmds) {
    CLI::App* sub = app->add_subcommand(c.name, c.help);
    add_run_options(sub, req);
    sub->callback([&req, name = std::string(c.name)] { req.subcommand = name; });
  }
  // per-command extras
  app->get_subcommand("series-check")
      ->add_option("--xi2", req.xi2, "squared frequency");
  app->get_subcommand("series-check")
      ->add_option("--terms", req.terms, "number of series terms");
  app->get_subcommand("pairing-check")
      ->add_option("--kernel", req.bessel_k, "Bessel kernel order k");
  app->get_subcommand("compactness")
      ->add_option("--levels", req.levels_str, "mollifier levels (comma list)");
  app->get_subcommand("verify-gn")
      ->add_option("--C", req.constant, "certified constant");
  app->get_subcommand("minimize")
      ->add_option("--save-field", req.save_field_path,
                   "write the final field here");
  app->get_subcommand("probe-mass")
      ->add_option("--c-list", req.c_list_str, "constraint ladder");
  app->get_subcommand("probe-mass")
      ->add_option("--blowup", req.blowup, "seminorm blowup factor");
  app->get_subcommand("probe-mass")
      ->add_option("--probe-iters", req.probe_iters, "flow iterations per c");
  app->get_subcommand("probe-super")
      ->add_option("--deltas", req.deltas_str, "dilation factors");
  return app;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

int threads_cap() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("FRACLAB_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid FRACLAB_THREADS='" << env << "'\n";
  }
  return static_cast<int>(hw);
}

int run_batch(const std::string& manifest_path, const std::string& out_path) {
  std::ifstream is(manifest_path);
  if (!is) {
    std::cerr << "error: cannot open manifest " << manifest_path << '\n';
    return 2;
  }
  // validate everything before running anything
  std::vector<std::unique_ptr<RunRequest>> requests;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;
    auto req = std::make_unique<RunRequest>();
    auto app = build_app(*req);
    std::vector<std::string> rev(tokens.rbegin(), tokens.rend());
    try {
      app->parse(rev);
    } catch (const CLI::ParseError& e) {
      std::cerr << "error: manifest line " << lineno << ": " << e.what()
                << '\n';
      return 2;
    }
    if (!req->out_path.empty() || !req->csv_path.empty()) {
      std::cerr << "error: manifest line " << lineno
                << ": --out/--csv not allowed inside a batch\n";
      return 2;
    }
    requests.push_back(std::move(req));
  }

  std::vector<RunRecord> records(requests.size());
  std::vector<std::string> failures(requests.size());
  std::atomic<std::size_t> next{0};
  const int workers =
      std::max(1, std::min<int>(threads_cap(),
                                static_cast<int>(requests.size())));
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= requests.size()) return;
      try {
        records[i] = execute(*requests[i], /*interactive=*/false);
      } catch (const std::exception& e) {
        records[i].subcommand = requests[i]->subcommand;
        records[i].seed = requests[i]->seed;
        records[i].outcome = Outcome::error;
        records[i].add("err", sanitize(e.what()));
        failures[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int counts[5] = {0, 0, 0, 0, 0};
  std::ostringstream body;
  for (const auto& rec : records) {
    body << serialize_record(rec) << '\n';
    counts[static_cast<int>(rec.outcome)]++;
  }
  std::ostringstream summary;
  summary << "summary total=" << records.size()
          << " certified=" << counts[static_cast<int>(Outcome::certified)]
          << " violated=" << counts[static_cast<int>(Outcome::violated)]
          << " converged=" << counts[static_cast<int>(Outcome::converged)]
          << " flagged=" << counts[static_cast<int>(Outcome::flagged)]
          << " error=" << counts[static_cast<int>(Outcome::error)];
  if (out_path.empty()) {
    std::cout << body.str() << summary.str() << '\n';
  } else {
    std::ofstream os(out_path);
    if (!os) {
      std::cerr << "error: cannot open " << out_path << '\n';
      return 2;
    }
    os << body.str() << summary.str() << '\n';
    std::cout << summary.str() << '\n';
  }
  for (std::size_t i = 0; i < failures.size(); ++i)
    if (!failures[i].empty())
      std::cerr << "run " << i + 1 << " failed: " << failures[i] << '\n';
  const bool all_good = counts[static_cast<int>(Outcome::violated)] == 0 &&
                        counts[static_cast<int>(Outcome::flagged)] == 0 &&
                        counts[static_cast<int>(Outcome::error)] == 0;
  return all_good ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc >= 2 && std::string(argv[1]) == "batch") {
    std::string manifest, out;
    CLI::App batch("run a manifest of fraclab invocations");
    batch.add_option("manifest", manifest, "manifest file, one run per line")
        ->required();
    batch.add_option("--out", out, "record output path (default stdout)");
    try {
      batch.parse(argc - 1, argv + 1);
    } catch (const CLI::ParseError& e) {
      batch.exit(e);
      return 2;
    }
    try {
      return run_batch(manifest, out);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
  }

  RunRequest req;
  auto app = build_app(req);
  try {
    app->parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app->exit(e);
    return e.get_name() == "CallForHelp" ? 0 : 2;
  }
  try {
    const RunRecord rec = execute(req, /*interactive=*/true);
    emit_record(rec, req.out_path);
    return outcome_exit_code(rec.outcome);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    RunRecord rec;
    rec.subcommand = req.subcommand;
    rec.seed = req.seed;
    rec.outcome = Outcome::error;
    rec.add("err", sanitize(e.what()));
    try {
      emit_record(rec, req.out_path);
    } catch (const std::exception&) {
    }
    return 2;
  }
}
