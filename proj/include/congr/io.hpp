#pragma once

// File formats. Points travel as JSON {"schema_version":1,"points":[["n/d",
// "n/d"],...]} or as CSV "x,y" lines; decimal literals are parsed exactly as
// rationals. Serialization is canonical: object keys sorted, rationals always
// "num/den".

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "congr/errors.hpp"
#include "congr/generators.hpp"
#include "congr/point_set.hpp"

namespace congr {

using Json = nlohmann::json;

inline constexpr int kPointsSchemaVersion = 1;
inline constexpr int kGeneratorSchemaVersion = 1;
inline constexpr int kConfigSchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

namespace detail {

inline const Json& require_field(const Json& doc, const std::string& name,
                                 const std::string& where) {
  auto it = doc.find(name);
  if (it == doc.end()) throw ValidationError(where + ": missing field '" + name + "'");
  return *it;
}

inline std::uint64_t require_uint(const Json& doc, const std::string& name,
                                  const std::string& where) {
  const Json& v = require_field(doc, name, where);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  throw ValidationError(where + "." + name + ": expected a nonnegative integer");
}

inline Rational require_rational(const Json& v, const std::string& where) {
  if (!v.is_string()) throw ValidationError(where + ": expected a rational string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

inline GaussianRational require_point(const Json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) {
    throw ValidationError(where + ": expected a pair [x, y] of rational strings");
  }
  return GaussianRational(require_rational(v[0], where + "[0]"),
                          require_rational(v[1], where + "[1]"));
}

inline void check_schema_version(const Json& doc, int expected, const std::string& where) {
  std::uint64_t v = require_uint(doc, "schema_version", where);
  if (v != static_cast<std::uint64_t>(expected)) {
    throw ValidationError(where + ": unsupported schema_version " + std::to_string(v));
  }
}

}  // namespace detail

inline Json point_to_json(const GaussianRational& p) {
  return Json::array({fraction_str(p.re), fraction_str(p.im)});
}

inline Json points_to_json(const PointSet& P) {
  Json arr = Json::array();
  for (const GaussianRational& p : P) arr.push_back(point_to_json(p));
  return Json{{"schema_version", kPointsSchemaVersion}, {"points", arr}};
}

inline PointSet points_from_json(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("points file: expected a JSON object");
  detail::check_schema_version(doc, kPointsSchemaVersion, "points file");
  const Json& arr = detail::require_field(doc, "points", "points file");
  if (!arr.is_array()) throw ValidationError("points file: 'points' must be an array");
  std::vector<GaussianRational> pts;
  pts.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    pts.push_back(detail::require_point(arr[i], "points[" + std::to_string(i) + "]"));
  }
  return PointSet(std::move(pts));
}

inline PointSet points_from_csv(const std::string& text) {
  std::vector<GaussianRational> pts;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char c : line) {
      if (c != ' ' && c != '\t') blank = false;
    }
    if (blank) continue;
    std::size_t comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw ValidationError("csv line " + std::to_string(lineno) + ": expected exactly 'x,y'");
    }
    try {
      pts.emplace_back(parse_rational(line.substr(0, comma)),
                       parse_rational(line.substr(comma + 1)));
    } catch (const ValidationError& e) {
      throw ValidationError("csv line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (pts.empty()) throw ValidationError("csv: no points found");
  return PointSet(std::move(pts));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << content;
}

inline Json parse_json_text(const std::string& text, const std::string& where) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ValidationError(where + ": malformed JSON");
  return doc;
}

inline PointSet load_points(const std::string& path) {
  std::string text = read_file(path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    return points_from_csv(text);
  }
  return points_from_json(parse_json_text(text, path));
}

namespace detail {

// Kind dispatch shared by the top-level spec and nested union parts (which
// do not repeat schema_version).
inline PointSet generate_spec(const Json& spec) {
  if (!spec.is_object()) throw ValidationError("generator spec: expected a JSON object");
  const Json& kind_field = detail::require_field(spec, "kind", "generator spec");
  if (!kind_field.is_string()) throw ValidationError("generator spec: 'kind' must be a string");
  const std::string kind = kind_field.get<std::string>();

  auto point_or = [&](const char* name, const GaussianRational& fallback) {
    auto it = spec.find(name);
    if (it == spec.end()) return fallback;
    return detail::require_point(*it, "generator spec." + std::string(name));
  };

  if (kind == "lattice") {
    return lattice(static_cast<std::uint32_t>(detail::require_uint(spec, "m", "generator spec")));
  }
  if (kind == "ap_line") {
    return ap_line(static_cast<std::uint32_t>(detail::require_uint(spec, "n", "generator spec")),
                   point_or("base", GaussianRational(0)), point_or("step", GaussianRational(1)));
  }
  if (kind == "parallel_ap_lines") {
    return parallel_ap_lines(
        static_cast<std::uint32_t>(detail::require_uint(spec, "lines", "generator spec")),
        static_cast<std::uint32_t>(detail::require_uint(spec, "n", "generator spec")),
        detail::require_point(detail::require_field(spec, "offset", "generator spec"),
                              "generator spec.offset"),
        point_or("base", GaussianRational(0)), point_or("step", GaussianRational(1)));
  }
  if (kind == "rotation_orbit" || kind == "concentric_orbits") {
    Rational t = detail::require_rational(detail::require_field(spec, "t", "generator spec"),
                                          "generator spec.t");
    GaussianRational p0 = point_or("p0", GaussianRational(1));
    GaussianRational center = point_or("center", GaussianRational(0));
    auto n = static_cast<std::uint32_t>(detail::require_uint(spec, "n", "generator spec"));
    if (kind == "rotation_orbit") return rotation_orbit(t, p0, center, n);
    const Json& scales_field = detail::require_field(spec, "scales", "generator spec");
    if (!scales_field.is_array() || scales_field.empty()) {
      throw ValidationError("generator spec.scales: expected a non-empty array");
    }
    std::vector<Rational> scales;
    for (std::size_t i = 0; i < scales_field.size(); ++i) {
      scales.push_back(detail::require_rational(scales_field[i],
                                                "generator spec.scales[" + std::to_string(i) + "]"));
    }
    return concentric_orbits(t, p0, center, n, scales);
  }
  if (kind == "union") {
    const Json& parts = detail::require_field(spec, "parts", "generator spec");
    if (!parts.is_array() || parts.empty()) {
      throw ValidationError("generator spec.parts: expected a non-empty array");
    }
    PointSet acc;
    for (const Json& part : parts) acc = merge(acc, generate_spec(part));
    return acc;
  }
  if (kind == "random_integer") {
    return random_integer(
        static_cast<std::uint32_t>(detail::require_uint(spec, "n", "generator spec")),
        detail::require_uint(spec, "range", "generator spec"),
        detail::require_uint(spec, "seed", "generator spec"));
  }
  throw ValidationError("generator spec: unknown kind '" + kind + "'");
}

}  // namespace detail

// Generator specs: {"schema_version":1, "kind":..., parameters per kind}.
inline PointSet generate(const Json& spec) {
  if (!spec.is_object()) throw ValidationError("generator spec: expected a JSON object");
  detail::check_schema_version(spec, kGeneratorSchemaVersion, "generator spec");
  return detail::generate_spec(spec);
}

}  // namespace congr
