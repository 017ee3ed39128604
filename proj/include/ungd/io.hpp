#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ungd/filter.hpp"

namespace ungd {

// File-level failures; the CLI maps these to exit code 1.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text signal file: one decimal sample per line, '#' starts a comment, and an
// optional "# fs=<rate>" comment records the original sampling rate
// (informational only; processing is in normalized frequency).
struct SignalFile {
  Signal samples;
  std::optional<double> fs;
};

inline SignalFile read_signal_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open signal file: " + path);
  SignalFile out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    if (line[begin] == '#') {
      const auto pos = line.find("fs=");
      if (pos != std::string::npos) {
        try {
          out.fs = std::stod(line.substr(pos + 3));
        } catch (const std::exception&) {
          // malformed fs comment stays informational noise
        }
      }
      continue;
    }
    char* end = nullptr;
    const double v = std::strtod(line.c_str() + begin, &end);
    const bool consumed = end && end != line.c_str() + begin;
    if (!consumed || !std::isfinite(v))
      throw io_error(path + ":" + std::to_string(lineno) + ": not a finite sample");
    out.samples.push_back(v);
  }
  return out;
}

inline void write_signal_file(const std::string& path, const Signal& x,
                              std::optional<double> fs = std::nullopt) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write signal file: " + path);
  char buf[64];
  if (fs) {
    std::snprintf(buf, sizeof(buf), "# fs=%.12g", *fs);
    out << buf << '\n';
  }
  for (const double v : x) {
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    out << buf << '\n';
  }
  if (!out) throw io_error("write failed: " + path);
}

// Headerless little-endian signed 16-bit mono samples (the minimal path for
// exported ECG traces), cast to double; optional mean removal on load.
inline Signal read_raw_int16(const std::string& path, bool remove_mean = true) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open raw file: " + path);
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() % 2 != 0) throw io_error("raw int16 file has odd byte length: " + path);
  Signal x(bytes.size() / 2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::uint16_t lo = static_cast<std::uint8_t>(bytes[2 * i]);
    const std::uint16_t hi = static_cast<std::uint8_t>(bytes[2 * i + 1]);
    x[i] = static_cast<double>(static_cast<std::int16_t>(static_cast<std::uint16_t>(lo | (hi << 8))));
  }
  if (remove_mean && !x.empty()) {
    double mean = 0.0;
    for (const double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    for (auto& v : x) v -= mean;
  }
  return x;
}

inline void write_raw_int16(const std::string& path, const std::vector<std::int16_t>& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write raw file: " + path);
  for (const std::int16_t s : samples) {
    const char lo = static_cast<char>(s & 0xFF);
    const char hi = static_cast<char>((s >> 8) & 0xFF);
    out.put(lo);
    out.put(hi);
  }
}

// Tab-separated table with a single '#'-prefixed header row, 12 significant
// digits per cell.
inline void write_tsv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write table: " + path);
  out << '#';
  for (std::size_t i = 0; i < header.size(); ++i) out << (i == 0 ? " " : "\t") << header[i];
  out << '\n';
  char buf[64];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.12g", row[i]);
      if (i) out << '\t';
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace ungd
