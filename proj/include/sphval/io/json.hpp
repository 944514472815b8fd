#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sphval/spherical/pipeline.hpp"

namespace sphval::io {

using json = nlohmann::json;
using polycore::RatMatrix;
using polycore::RatVec;
using polycore::Rational;

[[noreturn]] inline void schema_error(const std::string& pointer, const std::string& msg) {
  fail(ErrorKind::Schema, (pointer.empty() ? "/" : pointer) + ": " + msg);
}

inline const json& member(const json& j, const std::string& ptr, const char* key) {
  if (!j.is_object()) schema_error(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(ptr + "/" + key, "missing required field");
  return *it;
}

/// Rationals are strings "p/q" or "p"; plain JSON integers are accepted too.
inline Rational rational_from_json(const json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) schema_error(ptr, "expected a rational string \"p/q\" or an integer");
  try {
    return polycore::parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    schema_error(ptr, e.what());
  }
}

inline RatVec vec_from_json(const json& j, const std::string& ptr) {
  if (!j.is_array()) schema_error(ptr, "expected an array");
  RatVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational_from_json(j[i], ptr + "/" + std::to_string(i)));
  return v;
}

inline RatMatrix matrix_from_json(const json& j, const std::string& ptr) {
  if (!j.is_array()) schema_error(ptr, "expected an array of arrays");
  RatMatrix m;
  for (std::size_t i = 0; i < j.size(); ++i) m.push_back(vec_from_json(j[i], ptr + "/" + std::to_string(i)));
  return m;
}

inline std::size_t count_from_json(const json& j, const std::string& ptr) {
  if (!j.is_number_integer() || j.get<long>() < 0) schema_error(ptr, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline json to_json(const Rational& q) { return polycore::format_rational(q); }

inline json to_json(const RatVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const RatMatrix& m) {
  json a = json::array();
  for (const auto& v : m) a.push_back(to_json(v));
  return a;
}

inline json index_list(const std::vector<std::size_t>& idx) {
  json a = json::array();
  for (auto i : idx) a.push_back(i);
  return a;
}

inline json to_json(const polycore::Cone& c) {
  return {{"ambient_rank", c.ambient_rank()},
          {"dimension", c.dimension()},
          {"rays", to_json(c.rays())},
          {"lineality", to_json(c.lineality())},
          {"facet_normals", to_json(c.facet_normals())},
          {"equations", to_json(c.equations())}};
}

inline json to_json(const polycore::Fan& f) {
  json cones = json::array();
  for (const auto& c : f.cones()) cones.push_back({{"rays", to_json(c.rays())}, {"dimension", c.dimension()}});
  return {{"ambient_rank", f.ambient_rank()}, {"cones", cones}};
}

inline json to_json(const polycore::Polytope& p) {
  json hs = json::array();
  for (const auto& h : p.halfspaces()) hs.push_back({{"normal", to_json(h.normal)}, {"offset", to_json(h.offset)}});
  return {{"ambient_rank", p.ambient_rank()}, {"halfspaces", hs}, {"vertices", to_json(p.vertices())}};
}

inline json to_json(const polycore::FaceDescriptor& f) {
  return {{"active", index_list(f.active)},
          {"dimension", f.dimension},
          {"relative_interior_point", to_json(f.relative_interior_point)},
          {"vertices", index_list(f.vertices)}};
}

inline rootsys::RootSystem root_system_from_json(const json& j, const std::string& ptr) {
  const json& type = member(j, ptr, "type");
  if (!type.is_string()) schema_error(ptr + "/type", "expected a string");
  const std::string t = type.get<std::string>();
  const char* key = t == "A1^k" ? "k" : t == "A(n)" ? "n" : t == "T^r" ? "r" : nullptr;
  if (!key) schema_error(ptr + "/type", "unknown root system type '" + t + "'");
  const std::size_t param = count_from_json(member(j, ptr, key), ptr + "/" + key);
  try {
    return rootsys::parse_descriptor(t, param);
  } catch (const Error& e) {
    schema_error(ptr, e.what());
  }
}

inline json to_json(const rootsys::RootSystem& rs) {
  switch (rs.type()) {
    case rootsys::RootType::A1Product: return {{"type", "A1^k"}, {"k", rs.parameter()}};
    case rootsys::RootType::TypeA: return {{"type", "A(n)"}, {"n", rs.parameter()}};
    case rootsys::RootType::Torus: return {{"type", "T^r"}, {"r", rs.parameter()}};
  }
  return {};
}

inline spherical::SphericalDatum datum_from_json(const json& j, const std::string& base = "") {
  spherical::SphericalDatum d;
  if (!j.is_object()) schema_error(base, "expected an object");
  if (j.contains("name")) {
    if (!j["name"].is_string()) schema_error(base + "/name", "expected a string");
    d.name = j["name"].get<std::string>();
  }
  d.rank = count_from_json(member(j, base, "rank"), base + "/rank");
  d.spherical_roots = matrix_from_json(member(j, base, "spherical_roots"), base + "/spherical_roots");
  d.kappa = j.contains("kappa") ? vec_from_json(j["kappa"], base + "/kappa") : polycore::zeros(d.rank);
  const json& divs = member(j, base, "divisors");
  if (!divs.is_array()) schema_error(base + "/divisors", "expected an array");
  for (std::size_t i = 0; i < divs.size(); ++i) {
    const std::string p = base + "/divisors/" + std::to_string(i);
    spherical::DivisorRecord r;
    const json& label = member(divs[i], p, "label");
    if (!label.is_string()) schema_error(p + "/label", "expected a string");
    r.label = label.get<std::string>();
    r.v = vec_from_json(member(divs[i], p, "v"), p + "/v");
    r.m = rational_from_json(member(divs[i], p, "m"), p + "/m");
    const json& gs = member(divs[i], p, "g_stable");
    if (!gs.is_boolean()) schema_error(p + "/g_stable", "expected a boolean");
    r.g_stable = gs.get<bool>();
    d.divisors.push_back(std::move(r));
  }
  if (j.contains("root_system") && !j["root_system"].is_null()) {
    const json& rj = j["root_system"];
    spherical::RootSystemLink link;
    link.root_system = root_system_from_json(rj, base + "/root_system");
    link.embedding = matrix_from_json(member(rj, base + "/root_system", "embedding"), base + "/root_system/embedding");
    if (rj.contains("kappa_character")) {
      link.kappa_character = vec_from_json(rj["kappa_character"], base + "/root_system/kappa_character");
    } else {
      if (link.embedding.size() != link.root_system.rank())
        schema_error(base + "/root_system/embedding", "needs one row per character coordinate");
      link.kappa_character = polycore::apply(link.embedding, d.kappa);
    }
    d.root_link = std::move(link);
  }
  try {
    d.validate();
  } catch (const Error& e) {
    schema_error(base, e.what());
  }
  return d;
}

inline json to_json(const spherical::SphericalDatum& d) {
  json divs = json::array();
  for (const auto& r : d.divisors)
    divs.push_back({{"label", r.label}, {"v", to_json(r.v)}, {"m", to_json(r.m)}, {"g_stable", r.g_stable}});
  json j = {{"name", d.name},
            {"rank", d.rank},
            {"spherical_roots", to_json(d.spherical_roots)},
            {"kappa", to_json(d.kappa)},
            {"divisors", divs}};
  if (d.root_link) {
    json rj = to_json(d.root_link->root_system);
    rj["embedding"] = to_json(d.root_link->embedding);
    rj["kappa_character"] = to_json(d.root_link->kappa_character);
    j["root_system"] = rj;
  }
  return j;
}

/// Cones are listed by generating rays; the parsed fan is closed under faces.
inline polycore::Fan fan_from_json(const json& j, const std::string& ptr = "") {
  const std::size_t n = count_from_json(member(j, ptr, "ambient_rank"), ptr + "/ambient_rank");
  const json& cones = member(j, ptr, "cones");
  if (!cones.is_array()) schema_error(ptr + "/cones", "expected an array");
  std::vector<polycore::Cone> cs;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    const std::string p = ptr + "/cones/" + std::to_string(i);
    const RatMatrix rays = matrix_from_json(member(cones[i], p, "rays"), p + "/rays");
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (rays[r].size() != n) schema_error(p + "/rays/" + std::to_string(r), "wrong length");
    cs.push_back(polycore::Cone::from_generators(rays, n));
  }
  return polycore::Fan::face_closure(cs, n);
}

inline std::string datum_hash(const spherical::SphericalDatum& d) { return spherical::fnv1a_hex(to_json(d).dump()); }

}  // namespace sphval::io
