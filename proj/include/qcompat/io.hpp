#pragma once

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <string>

#include "json.hpp"

namespace qcompat {

// 12 significant digits through to_chars: locale-independent, '.' separator,
// shortest spelling of the rounded value. Non-finite values print as
// inf/-inf/nan.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

// The value format_double would print, as a double; keeps JSON numbers in the
// same 12-digit policy as CSV output.
inline double round_sig12(double x) {
  if (!std::isfinite(x)) return x;
  const std::string s = format_double(x);
  double out = x;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

// JSON has no infinity literal, so non-finite values become strings.
inline nlohmann::ordered_json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return round_sig12(x);
}

inline std::string iso8601_utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct RunManifest {
  std::string command;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  uint64_t seed = 0;
  std::string tool_version;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["seed"] = seed;
    j["tool_version"] = tool_version;
    j["timestamp"] = iso8601_utc_now();
    return j;
  }
};

// Sibling manifest for a data file written to `out_path`.
inline void write_manifest(const std::string& out_path, const RunManifest& manifest) {
  std::ofstream f(out_path + ".manifest.json");
  if (!f) throw std::runtime_error("cannot write manifest next to " + out_path);
  f << manifest.to_json().dump(2) << "\n";
}

}  // namespace qcompat
