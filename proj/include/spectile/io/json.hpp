#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>
#include "spectile/fourier/region.hpp"
#include "spectile/measures/measure.hpp"

namespace spectile::io {

using nlohmann::json;

namespace detail {

[[noreturn]] inline void bad(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::MalformedInput, "field '" + field + "': " + why);
}

inline const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where.empty() ? key : where + "." + key, "missing");
  return j.at(key);
}

inline std::string path(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }

}  // namespace detail

inline json read_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::MalformedInput, "cannot open '" + file + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedInput, "'" + file + "' is not valid JSON: " + e.what());
  }
}

/// Integers, "p/q" strings and finite decimals, all converted exactly.
/// Floating JSON numbers are read from their shortest decimal form.
inline Rational parse_number(const json& j, const std::string& field) {
  try {
    if (j.is_number_integer()) return Rational(j.dump());
    if (j.is_number_float()) return parse_rational(j.dump());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    detail::bad(field, e.what());
  }
  detail::bad(field, "expected a number or \"p/q\" string");
}

inline double parse_double(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  return to_double(parse_number(j, field));
}

inline RVec parse_vector(const json& j, const std::string& field, std::size_t dim = 0) {
  if (!j.is_array() || j.empty()) detail::bad(field, "expected a nonempty array");
  if (dim && j.size() != dim) detail::bad(field, "expected " + std::to_string(dim) + " coordinates");
  RVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_number(j[i], field + "[" + std::to_string(i) + "]"));
  return v;
}

inline std::vector<RVec> parse_vectors(const json& j, const std::string& field, std::size_t dim = 0) {
  if (!j.is_array() || j.empty()) detail::bad(field, "expected a nonempty array of vectors");
  std::vector<RVec> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_vector(j[i], field + "[" + std::to_string(i) + "]", dim));
    if (!dim) dim = out.back().size();
  }
  return out;
}

inline std::vector<double> parse_doubles(const json& j, const std::string& field) {
  if (!j.is_array()) detail::bad(field, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_double(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

/// A lattice given by its generators (one vector each).
inline Lattice parse_lattice(const json& j, const std::string& field) {
  const auto gens = parse_vectors(j, field);
  try {
    return Lattice(gens);
  } catch (const Error& e) {
    detail::bad(field, e.what());
  }
}

inline geometry::Polytope parse_polytope(const json& j, const std::string& where = "") {
  if (j.contains("vertices")) {
    std::size_t dim = 0;
    if (j.contains("dim")) {
      if (!j["dim"].is_number_integer() || j["dim"].get<long>() < 1) detail::bad(detail::path(where, "dim"), "expected a positive integer");
      dim = j["dim"].get<std::size_t>();
    }
    return geometry::Polytope::from_vertices(parse_vectors(j["vertices"], detail::path(where, "vertices"), dim));
  }
  if (j.contains("halfspaces")) {
    const auto& hs = j["halfspaces"];
    const std::string f = detail::path(where, "halfspaces");
    if (!hs.is_array() || hs.empty()) detail::bad(f, "expected a nonempty array");
    std::vector<geometry::Halfspace> out;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const std::string fi = f + "[" + std::to_string(i) + "]";
      out.push_back({parse_vector(detail::require(hs[i], "normal", fi), fi + ".normal"),
                     parse_number(detail::require(hs[i], "offset", fi), fi + ".offset")});
    }
    return geometry::Polytope::from_halfspaces(out);
  }
  detail::bad(where.empty() ? "vertices" : where, "expected \"vertices\" or \"halfspaces\"");
}

inline Region parse_region(const json& j, const std::string& where = "") {
  if (!j.is_object()) detail::bad(where.empty() ? "region" : where, "expected an object");
  if (j.contains("boxes")) {
    const auto& bs = j["boxes"];
    const std::string f = detail::path(where, "boxes");
    if (!bs.is_array() || bs.empty()) detail::bad(f, "expected a nonempty array");
    std::vector<Box> boxes;
    for (std::size_t i = 0; i < bs.size(); ++i) {
      const std::string fi = f + "[" + std::to_string(i) + "]";
      boxes.push_back({parse_vector(detail::require(bs[i], "lo", fi), fi + ".lo"),
                       parse_vector(detail::require(bs[i], "hi", fi), fi + ".hi")});
    }
    return Region(BoxUnion(boxes));
  }
  return Region(parse_polytope(j, where));
}

/// alpha as a number or as "sqrt(n)" / "sqrtn".
inline double parse_alpha(const json& j, const std::string& field, std::string& label) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.rfind("sqrt", 0) == 0) {
      std::string inner = s.substr(4);
      if (!inner.empty() && inner.front() == '(' && inner.back() == ')') inner = inner.substr(1, inner.size() - 2);
      label = s;
      return std::sqrt(to_double(parse_number(json(inner), field)));
    }
  }
  return parse_double(j, field);
}

inline PointSetSpec parse_point_set(const json& j, const std::string& where = "") {
  const std::string type = detail::require(j, "type", where).is_string() ? j["type"].get<std::string>() : "";
  std::vector<RVec> exclude;
  if (j.contains("exclude") && !j["exclude"].empty()) exclude = parse_vectors(j["exclude"], detail::path(where, "exclude"));
  try {
    if (type == "lattice") return PointSetSpec(LatticePoints{parse_lattice(detail::require(j, "basis", where), detail::path(where, "basis"))}, exclude);
    if (type == "periodic")
      return PointSetSpec(PeriodicPoints{parse_lattice(detail::require(j, "basis", where), detail::path(where, "basis")),
                                         parse_vectors(detail::require(j, "offsets", where), detail::path(where, "offsets"))},
                          exclude);
    if (type == "explicit")
      return PointSetSpec(ExplicitPoints{parse_vectors(detail::require(j, "points", where), detail::path(where, "points"))}, exclude);
    if (type == "parabolic_cube") {
      std::string label;
      const double alpha = parse_alpha(detail::require(j, "alpha", where), detail::path(where, "alpha"), label);
      return PointSetSpec(ParabolicCube{alpha, label}, exclude);
    }
  } catch (const Error& e) {
    if (std::string(e.what()).find("field '") != std::string::npos) throw;
    detail::bad(where.empty() ? "point set" : where, e.what());
  }
  detail::bad(detail::path(where, "type"), "expected lattice, periodic, explicit or parabolic_cube");
}

inline MeasureSpec parse_measure(const json& j, std::size_t dim) {
  const auto& cs = detail::require(j, "components", "");
  if (!cs.is_array() || cs.empty()) detail::bad("components", "expected a nonempty array");
  std::vector<MeasureComponent> out;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string f = "components[" + std::to_string(i) + "]";
    const auto& c = cs[i];
    const auto& type = detail::require(c, "type", f);
    const std::string t = type.is_string() ? type.get<std::string>() : "";
    if (t == "atoms") {
      Atoms a;
      a.exact = parse_vectors(detail::require(c, "points", f), f + ".points", dim);
      for (const auto& p : a.exact) a.points.push_back(to_double(p));
      a.weights = parse_doubles(detail::require(c, "weights", f), f + ".weights");
      if (c.contains("support_radius")) a.support_radius = parse_double(c["support_radius"], f + ".support_radius");
      out.push_back(std::move(a));
    } else if (t == "lattice_atoms") {
      LatticeAtoms a{parse_lattice(detail::require(c, "basis", f), f + ".basis"),
                     parse_vectors(detail::require(c, "offsets", f), f + ".offsets", dim),
                     parse_doubles(detail::require(c, "weights", f), f + ".weights"),
                     c.value("exclude_origin", false)};
      out.push_back(std::move(a));
    } else if (t == "product_lebesgue") {
      const auto& axes = detail::require(c, "point_axes", f);
      if (!axes.is_array()) detail::bad(f + ".point_axes", "expected an array of axis indices");
      ProductLebesgue p{{}, parse_point_set(detail::require(c, "point_set", f), f + ".point_set"),
                        parse_double(detail::require(c, "density", f), f + ".density")};
      for (const auto& a : axes) {
        if (!a.is_number_integer() || a.get<long>() < 0) detail::bad(f + ".point_axes", "expected nonnegative integers");
        p.point_axes.push_back(a.get<std::size_t>());
      }
      out.push_back(std::move(p));
    } else if (t == "uniform") {
      out.push_back(Uniform{parse_double(detail::require(c, "density", f), f + ".density")});
    } else {
      detail::bad(f + ".type", "expected atoms, lattice_atoms, product_lebesgue or uniform");
    }
  }
  try {
    return MeasureSpec(dim, std::move(out));
  } catch (const Error& e) {
    detail::bad("components", e.what());
  }
}

// --- output ---------------------------------------------------------------

inline json to_json(const Rational& q) { return format_rational(q); }

inline json to_json(const RVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(format_rational(x));
  return a;
}

inline json to_json(const DVec& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

inline json to_json(const Lattice& l) {
  json basis = json::array();
  for (const auto& g : l.generators()) basis.push_back(to_json(g));
  json out{{"basis", basis}};
  if (l.full_rank()) out["determinant"] = to_json(l.determinant());
  return out;
}

/// Atom list, positions exact when known.
inline json atoms_to_json(const Atoms& a) {
  json out = json::array();
  for (std::size_t i = 0; i < a.points.size(); ++i)
    out.push_back({{"position", a.exact.empty() ? to_json(a.points[i]) : to_json(a.exact[i])}, {"weight", a.weights[i]}});
  return out;
}

inline std::string atoms_to_csv(const Atoms& a) {
  std::ostringstream s;
  s.precision(17);
  const std::size_t d = a.points.empty() ? 0 : a.points[0].size();
  for (std::size_t i = 0; i < d; ++i) s << "x" << i << ",";
  s << "weight\n";
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    for (double x : a.points[i]) s << x << ",";
    s << a.weights[i] << "\n";
  }
  return s.str();
}

}  // namespace spectile::io
