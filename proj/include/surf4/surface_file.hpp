#pragma once

#include "surf4/chart.hpp"
#include "surf4/errors.hpp"
#include "surf4/exprlang.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace surf4 {

enum class JetMode { Analytic, FiniteDifference };

/// A user-defined surface: four coordinate expressions in u, v over a rectangle.
struct SurfaceFile {
  std::string name = "surface";
  std::array<std::string, 4> coords;
  Domain domain;
  JetMode jets = JetMode::Analytic;
  std::optional<double> fd_step;
};

namespace detail {

inline std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

/// Strips one pair of matching double quotes; unquoted values pass through.
inline std::string unquote(const std::string& value, int line) {
  if (value.empty() || value.front() != '"') return value;
  if (value.size() < 2 || value.back() != '"')
    throw InputError("line " + std::to_string(line) + ": unterminated quoted value");
  return value.substr(1, value.size() - 2);
}

inline double constant_value(const std::string& text, const std::string& key) {
  expr::Expr e;
  try {
    e = expr::parse(text);
  } catch (const SyntaxError& err) {
    throw InputError(key + ": " + err.what());
  }
  if (!expr::is_constant(e)) throw InputError(key + ": bound '" + text + "' must not depend on u or v");
  double value = 0.0;
  try {
    value = expr::evaluate<double>(e, 0.0, 0.0);
  } catch (const Error& err) {
    throw InputError(key + ": " + err.what());
  }
  if (!std::isfinite(value)) throw InputError(key + ": bound '" + text + "' is not finite");
  return value;
}

inline Interval parse_interval(const std::string& text, const std::string& key) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
    throw InputError(key + ": expected \"lo,hi\"");
  Interval iv{constant_value(trim(text.substr(0, comma)), key), constant_value(trim(text.substr(comma + 1)), key)};
  if (!iv.valid()) throw InputError(key + ": interval must satisfy lo < hi");
  return iv;
}

}  // namespace detail

/// Reads the key=value surface format. One key per line, '#' starts a comment,
/// values may be double-quoted. Keys: name, x1..x4, u, v, jets, fd_step.
inline SurfaceFile parse_surface_file(std::istream& in) {
  std::map<std::string, std::string> values;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    bool quoted = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') quoted = !quoted;
      if (raw[i] == '#' && !quoted) {
        raw.resize(i);
        break;
      }
    }
    const std::string text = detail::trim(raw);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw InputError("line " + std::to_string(line) + ": expected key = value");
    const std::string key = detail::trim(text.substr(0, eq));
    const std::string value = detail::unquote(detail::trim(text.substr(eq + 1)), line);
    static const std::array<const char*, 9> known{"name", "x1", "x2", "x3", "x4", "u", "v", "jets", "fd_step"};
    if (std::find_if(known.begin(), known.end(), [&](const char* k) { return key == k; }) == known.end())
      throw InputError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    if (!values.emplace(key, value).second)
      throw InputError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
  }

  const auto require = [&](const std::string& key) -> const std::string& {
    const auto it = values.find(key);
    if (it == values.end()) throw InputError("missing key '" + key + "'");
    return it->second;
  };

  SurfaceFile surface;
  if (values.count("name")) surface.name = values["name"];
  for (std::size_t i = 0; i < 4; ++i) {
    const std::string key = "x" + std::to_string(i + 1);
    surface.coords[i] = require(key);
    try {
      (void)expr::parse(surface.coords[i]);
    } catch (const SyntaxError& err) {
      throw InputError(key + ": " + err.what());
    }
  }
  surface.domain.u = detail::parse_interval(require("u"), "u");
  surface.domain.v = detail::parse_interval(require("v"), "v");
  if (values.count("jets")) {
    const std::string& mode = values["jets"];
    if (mode == "analytic") surface.jets = JetMode::Analytic;
    else if (mode == "fd") surface.jets = JetMode::FiniteDifference;
    else throw InputError("jets: expected analytic or fd, got '" + mode + "'");
  }
  if (values.count("fd_step")) {
    const double h = detail::constant_value(values["fd_step"], "fd_step");
    if (!(h > 0)) throw InputError("fd_step must be positive");
    surface.fd_step = h;
  }
  return surface;
}

inline SurfaceFile parse_surface_file(const std::string& text) {
  std::istringstream in(text);
  return parse_surface_file(in);
}

inline SurfaceFile load_surface_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open surface file '" + path + "'");
  return parse_surface_file(in);
}

inline Chart surface_chart(const SurfaceFile& surface) {
  Chart c = expr::compile_chart(surface.coords, surface.domain);
  if (surface.jets == JetMode::FiniteDifference) return c.with_finite_differences(surface.fd_step);
  return c;
}

}  // namespace surf4
