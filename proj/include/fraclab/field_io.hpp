// Field file I/O.  Text format: header line "n N L" followed by N^n
// whitespace-separated values in row-major order.  Raw format (paths ending
// in .raw): little-endian 64-bit floats with the same header in a ".hdr"
// sidecar next to the data file.
#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fraclab/field.hpp"

namespace fraclab {

namespace detail {

inline Grid parse_field_header(const std::string& line, const std::string& path) {
  std::istringstream is(line);
  int n = 0, N = 0;
  double L = 0.0;
  if (!(is >> n >> N >> L))
    throw std::runtime_error("bad field header in " + path + ": want 'n N L'");
  std::string extra;
  if (is >> extra)
    throw std::runtime_error("trailing tokens in field header of " + path);
  return Grid(n, N, L);
}

inline std::string sidecar_path(const std::string& path) { return path + ".hdr"; }

inline bool is_raw_path(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".raw") == 0;
}

}  // namespace detail

inline void write_field_text(const std::string& path, const Field& u) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os.precision(17);
  os << u.grid.dim() << ' ' << u.grid.points() << ' ' << u.grid.length() << '\n';
  for (std::size_t i = 0; i < u.values.size(); ++i)
    os << u.values[i] << ((i + 1) % 8 == 0 ? '\n' : ' ');
  os << '\n';
  if (!os) throw std::runtime_error("write failed for " + path);
}

inline Field read_field_text(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::string header;
  if (!std::getline(is, header))
    throw std::runtime_error("empty field file " + path);
  const Grid g = detail::parse_field_header(header, path);
  std::vector<double> values(g.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!(is >> values[i]))
      throw std::runtime_error("short field file " + path + ": expected " +
                               std::to_string(g.size()) + " values");
  double extra;
  if (is >> extra) throw std::runtime_error("trailing values in " + path);
  return Field(g, std::move(values));
}

inline void write_field_raw(const std::string& path, const Field& u) {
  {
    std::ofstream hdr(detail::sidecar_path(path));
    if (!hdr) throw std::runtime_error("cannot open sidecar for " + path);
    hdr << u.grid.dim() << ' ' << u.grid.points() << ' ';
    hdr.precision(17);
    hdr << u.grid.length() << '\n';
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  for (double v : u.values) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    unsigned char bytes[8];
    for (int b = 0; b < 8; ++b)
      bytes[b] = static_cast<unsigned char>(bits >> (8 * b));
    os.write(reinterpret_cast<const char*>(bytes), 8);
  }
  if (!os) throw std::runtime_error("write failed for " + path);
}

inline Field read_field_raw(const std::string& path) {
  std::ifstream hdr(detail::sidecar_path(path));
  if (!hdr)
    throw std::runtime_error("missing sidecar " + detail::sidecar_path(path));
  std::string header;
  std::getline(hdr, header);
  const Grid g = detail::parse_field_header(header, path);
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::vector<double> values(g.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    unsigned char bytes[8];
    if (!is.read(reinterpret_cast<char*>(bytes), 8))
      throw std::runtime_error("short raw field file " + path);
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b)
      bits |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
    std::memcpy(&values[i], &bits, sizeof(double));
  }
  char extra;
  if (is.read(&extra, 1)) throw std::runtime_error("trailing bytes in " + path);
  return Field(g, std::move(values));
}

inline void write_field(const std::string& path, const Field& u) {
  if (detail::is_raw_path(path))
    write_field_raw(path, u);
  else
    write_field_text(path, u);
}

inline Field read_field(const std::string& path) {
  return detail::is_raw_path(path) ? read_field_raw(path)
                                   : read_field_text(path);
}

}  // namespace fraclab
