#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wmgtomo/convergence.hpp"

namespace wmgtomo {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text that reads back to the same double (17 significant digits).
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Row-major 2D array of doubles: an n x n image or an n_angles x n_detectors sinogram.
struct Array2D {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<double> values;
};

inline constexpr std::array<char, 4> kArrayMagic{'W', 'M', 'G', 'T'};
inline constexpr std::uint32_t kArrayFormatVersion = 1;

namespace detail {

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xffu));
}

inline void put_u64(std::string& out, std::uint64_t v) {
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xffu));
}

inline std::uint64_t get_le(const std::string& in, std::size_t at, int bytes) {
  std::uint64_t v = 0;
  for (int k = 0; k < bytes; ++k)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[at + static_cast<std::size_t>(k)])) << (8 * k);
  return v;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("write to '" + path + "' failed");
}

}  // namespace detail

/**
 * Binary layout: "WMGT", then version, rows and cols as little-endian uint32
 * (16 bytes in all), then rows*cols little-endian IEEE-754 doubles, row-major.
 */
inline std::string encode_array(const Array2D& a) {
  if (static_cast<std::uint64_t>(a.rows) * a.cols != a.values.size())
    throw FormatError("encode_array: rows * cols does not match the value count");
  std::string out(kArrayMagic.begin(), kArrayMagic.end());
  detail::put_u32(out, kArrayFormatVersion);
  detail::put_u32(out, a.rows);
  detail::put_u32(out, a.cols);
  out.reserve(16 + 8 * a.values.size());
  for (double v : a.values) detail::put_u64(out, std::bit_cast<std::uint64_t>(v));
  return out;
}

inline Array2D decode_array(const std::string& bytes) {
  if (bytes.size() < 16 || !std::equal(kArrayMagic.begin(), kArrayMagic.end(), bytes.begin()))
    throw FormatError("not a WMGT array file (bad magic)");
  const auto version = static_cast<std::uint32_t>(detail::get_le(bytes, 4, 4));
  if (version != kArrayFormatVersion)
    throw FormatError("unsupported WMGT format version " + std::to_string(version));
  Array2D a;
  a.rows = static_cast<std::uint32_t>(detail::get_le(bytes, 8, 4));
  a.cols = static_cast<std::uint32_t>(detail::get_le(bytes, 12, 4));
  const std::uint64_t count = static_cast<std::uint64_t>(a.rows) * a.cols;
  if (bytes.size() != 16 + 8 * count)
    throw FormatError("WMGT payload holds " + std::to_string(bytes.size() - 16) + " bytes, header promises " +
                      std::to_string(8 * count));
  a.values.resize(count);
  for (std::size_t i = 0; i < count; ++i)
    a.values[i] = std::bit_cast<double>(detail::get_le(bytes, 16 + 8 * i, 8));
  return a;
}

inline void write_array(const std::string& path, const Array2D& a) { detail::write_file(path, encode_array(a)); }

inline Array2D read_array(const std::string& path) {
  try {
    return decode_array(detail::read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

/// 8-bit binary PGM with linear min-max scaling; a constant array maps to black.
inline std::string encode_pgm(const Array2D& a) {
  if (static_cast<std::uint64_t>(a.rows) * a.cols != a.values.size())
    throw FormatError("encode_pgm: rows * cols does not match the value count");
  std::string out = "P5\n" + std::to_string(a.cols) + " " + std::to_string(a.rows) + "\n255\n";
  if (a.values.empty()) return out;
  const auto [lo, hi] = std::minmax_element(a.values.begin(), a.values.end());
  const double range = *hi - *lo;
  for (double v : a.values) {
    const double level = range > 0.0 ? (v - *lo) / range * 255.0 : 0.0;
    out.push_back(static_cast<char>(static_cast<unsigned char>(std::clamp(std::lround(level), 0L, 255L))));
  }
  return out;
}

inline void write_pgm(const std::string& path, const Array2D& a) { detail::write_file(path, encode_pgm(a)); }

/**
 * Convergence log as CSV: iter,rel_res,rel_err_l2,rel_err_linf,seconds.
 * Error columns are blank when the record carries no errors; the seconds
 * column is blank when include_seconds is false (for byte-stable output).
 */
inline std::string encode_convergence_csv(const ConvergenceRecord& record, bool include_seconds = true) {
  std::string out = "iter,rel_res,rel_err_l2,rel_err_linf,seconds\n";
  for (const auto& e : record.entries) {
    out += std::to_string(e.iteration);
    out += ',' + format_double(e.rel_res) + ',';
    if (e.rel_l2) out += format_double(*e.rel_l2);
    out += ',';
    if (e.rel_linf) out += format_double(*e.rel_linf);
    out += ',';
    if (include_seconds) out += format_double(e.seconds);
    out += '\n';
  }
  return out;
}

inline void write_convergence_csv(const std::string& path, const ConvergenceRecord& record,
                                  bool include_seconds = true) {
  detail::write_file(path, encode_convergence_csv(record, include_seconds));
}

/// Parses a convergence CSV back; the status is not stored and reads as max-iterations.
inline ConvergenceRecord decode_convergence_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "iter,rel_res,rel_err_l2,rel_err_linf,seconds")
    throw FormatError("convergence CSV: unexpected header");
  ConvergenceRecord record;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != 5) throw FormatError("convergence CSV: expected 5 fields in '" + line + "'");
    ConvergenceRecord::Entry e;
    try {
      e.iteration = std::stoul(fields[0]);
      e.rel_res = std::stod(fields[1]);
      if (!fields[2].empty()) e.rel_l2 = std::stod(fields[2]);
      if (!fields[3].empty()) e.rel_linf = std::stod(fields[3]);
      if (!fields[4].empty()) e.seconds = std::stod(fields[4]);
    } catch (const std::logic_error&) {
      throw FormatError("convergence CSV: malformed number in '" + line + "'");
    }
    record.entries.push_back(e);
  }
  return record;
}

/// Ordered flat key=value list. Lines starting with '#' and blank lines are ignored on read.
class Manifest {
 public:
  void set(const std::string& key, std::string value) {
    if (key.empty() || key.find_first_of("=\n") != std::string::npos)
      throw std::invalid_argument("manifest key '" + key + "' is empty or contains '=' or a newline");
    if (value.find('\n') != std::string::npos) throw std::invalid_argument("manifest value contains a newline");
    for (auto& kv : entries_) {
      if (kv.first == key) {
        kv.second = std::move(value);
        return;
      }
    }
    entries_.emplace_back(key, std::move(value));
  }
  void set(const std::string& key, double value) { set(key, format_double(value)); }
  void set(const std::string& key, long long value) { set(key, std::to_string(value)); }
  void set(const std::string& key, std::size_t value) { set(key, std::to_string(value)); }
  void set(const std::string& key, const char* value) { set(key, std::string(value)); }

  std::optional<std::string> get(const std::string& key) const {
    for (const auto& kv : entries_)
      if (kv.first == key) return kv.second;
    return std::nullopt;
  }

  std::string require(const std::string& key) const {
    auto v = get(key);
    if (!v) throw FormatError("manifest is missing key '" + key + "'");
    return *v;
  }

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  std::string encode() const {
    std::string out;
    for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
    return out;
  }

  static Manifest decode(const std::string& text) {
    Manifest m;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line.front() == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos || eq == 0) throw FormatError("manifest line without key=value: '" + line + "'");
      m.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return m;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

inline void write_manifest(const std::string& path, const Manifest& m) { detail::write_file(path, m.encode()); }
inline Manifest read_manifest(const std::string& path) { return Manifest::decode(detail::read_file(path)); }

inline void write_text(const std::string& path, const std::string& text) { detail::write_file(path, text); }

}  // namespace wmgtomo
