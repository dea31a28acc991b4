// Run records: the one-line structured text emitted per CLI invocation, plus
// the certificate serialization and a round-trip parser.  Wall time is kept
// in memory only; serialized records must be byte-identical across runs with
// the same config and seed.
#pragma once

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fraclab/inequalities.hpp"

namespace fraclab {

enum class Outcome { certified, violated, converged, flagged, error };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::certified: return "certified";
    case Outcome::violated: return "violated";
    case Outcome::converged: return "converged";
    case Outcome::flagged: return "flagged";
    default: return "error";
  }
}

inline Outcome outcome_from_name(const std::string& name) {
  if (name == "certified") return Outcome::certified;
  if (name == "violated") return Outcome::violated;
  if (name == "converged") return Outcome::converged;
  if (name == "flagged") return Outcome::flagged;
  if (name == "error") return Outcome::error;
  throw std::invalid_argument("unknown outcome: " + name);
}

/// Exit status contract: 0 certified/converged, 1 violation/flag, 2 bad input.
inline int outcome_exit_code(Outcome o) {
  switch (o) {
    case Outcome::certified:
    case Outcome::converged: return 0;
    case Outcome::violated:
    case Outcome::flagged: return 1;
    default: return 2;
  }
}

inline std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a 64-bit offset basis
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Shortest-exact double rendering, stable across runs.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct RunRecord {
  std::string subcommand;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::error;
  std::vector<std::pair<std::string, std::string>> payload;
  double wall_time_ms = 0.0;  // diagnostic only, never serialized

  void add(const std::string& key, const std::string& value) {
    payload.emplace_back(key, value);
  }
  void add(const std::string& key, double value) {
    payload.emplace_back(key, format_double(value));
  }
  void add(const std::string& key, int value) {
    payload.emplace_back(key, std::to_string(value));
  }
  void add_flag(const std::string& key, bool value) {
    payload.emplace_back(key, value ? "1" : "0");
  }
};

inline std::string serialize_record(const RunRecord& rec) {
  std::ostringstream os;
  char hash[19];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(rec.config_hash));
  os << "subcommand=" << rec.subcommand << " config=" << hash
     << " seed=" << rec.seed << " outcome=" << outcome_name(rec.outcome);
  for (const auto& [key, value] : rec.payload) os << ' ' << key << '=' << value;
  return os.str();
}

/// Inverse of serialize_record; payload keys keep their order.
inline RunRecord parse_record(const std::string& line) {
  RunRecord rec;
  std::istringstream is(line);
  std::string token;
  int field = 0;
  while (is >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("record token without '=': " + token);
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    switch (field) {
      case 0:
        if (key != "subcommand")
          throw std::invalid_argument("record must start with subcommand=");
        rec.subcommand = value;
        break;
      case 1:
        if (key != "config") throw std::invalid_argument("expected config=");
        rec.config_hash = std::stoull(value, nullptr, 16);
        break;
      case 2:
        if (key != "seed") throw std::invalid_argument("expected seed=");
        rec.seed = std::stoull(value);
        break;
      case 3:
        if (key != "outcome") throw std::invalid_argument("expected outcome=");
        rec.outcome = outcome_from_name(value);
        break;
      default:
        rec.payload.emplace_back(key, value);
    }
    ++field;
  }
  if (field < 4) throw std::invalid_argument("truncated record: " + line);
  return rec;
}

/// Certificate payload in the fixed column order shared with the CSV output.
inline std::vector<std::pair<std::string, std::string>> certificate_payload(
    const CertificateReport& rep) {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("kind", rep.kind);
  kv.emplace_back("n", std::to_string(rep.grid_dim));
  kv.emplace_back("s", format_double(rep.s));
  kv.emplace_back("p", format_double(rep.p));
  kv.emplace_back("q", format_double(rep.q));
  kv.emplace_back("r", format_double(rep.r));
  kv.emplace_back("theta", format_double(rep.theta));
  kv.emplace_back("lhs", format_double(rep.lhs));
  kv.emplace_back("rhs", format_double(rep.rhs));
  kv.emplace_back("ratio", format_double(rep.ratio));
  kv.emplace_back("slack", format_double(rep.slack));
  kv.emplace_back("satisfied", rep.satisfied ? "1" : "0");
  kv.emplace_back("grid", std::to_string(rep.grid_dim) + ',' +
                              std::to_string(rep.grid_points) + ',' +
                              format_double(rep.grid_length));
  return kv;
}

/// CSV with the payload keys as header; fields containing commas are quoted.
inline std::string payload_csv_header(
    const std::vector<std::pair<std::string, std::string>>& payload) {
  std::string out;
  for (std::size_t i = 0; i < payload.size(); ++i) {
    if (i) out += ',';
    out += payload[i].first;
  }
  return out;
}

inline std::string payload_csv_row(
    const std::vector<std::pair<std::string, std::string>>& payload) {
  std::string out;
  for (std::size_t i = 0; i < payload.size(); ++i) {
    if (i) out += ',';
    const std::string& v = payload[i].second;
    if (v.find(',') != std::string::npos)
      out += '"' + v + '"';
    else
      out += v;
  }
  return out;
}

}  // namespace fraclab
