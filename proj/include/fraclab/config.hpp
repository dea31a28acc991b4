// Solver configuration files: INI-style sections [grid], [solver],
// [nonlinearity] with key=value lines.  '#' and ';' start comments; unknown
// sections or keys are rejected so typos fail loudly.
#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fraclab/minimizer.hpp"
#include "fraclab/nonlinearity.hpp"

namespace fraclab {

using ConfigSections = std::map<std::string, std::map<std::string, std::string>>;

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config: boolean expected for " + key);
}

}  // namespace detail

inline ConfigSections parse_config_sections(std::istream& is) {
  ConfigSections out;
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": unterminated section header");
      section = detail::trim(line.substr(1, line.size() - 2));
      out[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    if (section.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": key outside any section");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key");
    if (!out[section].emplace(key, value).second)
      throw std::invalid_argument("config: duplicate key " + key + " in [" +
                                  section + "]");
  }
  return out;
}

/// Fully resolved run setup: the grid, the solver knobs, and the nonlinearity
/// (with its s/n context synchronized).
struct RunConfig {
  SolverConfig solver;
  NonlinearitySpec spec;
};

inline RunConfig config_from_sections(const ConfigSections& sections) {
  for (const auto& [name, _] : sections)
    if (name != "grid" && name != "solver" && name != "nonlinearity")
      throw std::invalid_argument("config: unknown section [" + name + "]");

  RunConfig rc;
  int n = rc.solver.grid.dim();
  int N = rc.solver.grid.points();
  double L = rc.solver.grid.length();
  if (auto it = sections.find("grid"); it != sections.end()) {
    for (const auto& [key, value] : it->second) {
      if (key == "n") n = std::stoi(value);
      else if (key == "N") N = std::stoi(value);
      else if (key == "L") L = std::stod(value);
      else throw std::invalid_argument("config: unknown key " + key + " in [grid]");
    }
  }
  rc.solver.grid = Grid(n, N, L);

  if (auto it = sections.find("solver"); it != sections.end()) {
    for (const auto& [key, value] : it->second) {
      if (key == "c") rc.solver.c = std::stod(value);
      else if (key == "s") rc.solver.s = std::stod(value);
      else if (key == "step") rc.solver.step = std::stod(value);
      else if (key == "backtrack") rc.solver.backtrack = std::stod(value);
      else if (key == "max_iters") rc.solver.max_iters = std::stoi(value);
      else if (key == "max_backtracks") rc.solver.max_backtracks = std::stoi(value);
      else if (key == "grad_tol") rc.solver.grad_tol = std::stod(value);
      else if (key == "symmetrize")
        rc.solver.symmetrize = detail::parse_bool(value, key);
      else if (key == "seed") rc.solver.seed = std::stoull(value);
      else throw std::invalid_argument("config: unknown key " + key + " in [solver]");
    }
  }

  if (auto it = sections.find("nonlinearity"); it != sections.end()) {
    for (const auto& [key, _] : it->second)
      if (key != "family" && key != "l" && key != "K" && key != "a" &&
          key != "params")
        throw std::invalid_argument("config: unknown key " + key +
                                    " in [nonlinearity]");
    rc.spec = parse_spec_fields(it->second);
  }
  rc.spec.s = rc.solver.s;
  rc.spec.n = rc.solver.grid.dim();
  rc.solver.validate();
  rc.spec.validate();
  return rc;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open config file " + path);
  ConfigSections sections = parse_config_sections(is);
  return config_from_sections(sections);
}

/// Canonical text form; reparsing reproduces the same RunConfig.
inline std::string serialize_config(const RunConfig& rc) {
  std::ostringstream os;
  os.precision(17);
  os << "[grid]\n"
     << "n=" << rc.solver.grid.dim() << "\nN=" << rc.solver.grid.points()
     << "\nL=" << rc.solver.grid.length() << "\n\n[solver]\n"
     << "c=" << rc.solver.c << "\ns=" << rc.solver.s
     << "\nstep=" << rc.solver.step << "\nbacktrack=" << rc.solver.backtrack
     << "\nmax_iters=" << rc.solver.max_iters
     << "\nmax_backtracks=" << rc.solver.max_backtracks
     << "\ngrad_tol=" << rc.solver.grad_tol
     << "\nsymmetrize=" << (rc.solver.symmetrize ? "true" : "false")
     << "\nseed=" << rc.solver.seed << "\n\n[nonlinearity]\n"
     << "family=weighted_power\nl=" << rc.spec.l << "\nK=" << rc.spec.K
     << "\na=" << profile_name(rc.spec.profile) << "\nparams=";
  for (std::size_t i = 0; i < rc.spec.params.size(); ++i) {
    if (i) os << ',';
    os << rc.spec.params[i];
  }
  os << '\n';
  return os.str();
}

}  // namespace fraclab
