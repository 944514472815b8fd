#pragma once

#include <string>

#include "sphval/examples/instances.hpp"
#include "sphval/io/json.hpp"
#include "sphval/version.hpp"

namespace sphval::examples {

using io::json;

/// Exact invariants of an example; this is what the golden files freeze.
inline json example_report(const ExampleInstance& ex) {
  using io::to_json;
  const auto& d = ex.datum;
  json fx = json::object();
  for (const auto& [k, f] : ex.fixtures) fx[k] = {{"value", f.value}, {"provenance", f.provenance}};
  json j = {{"name", ex.name},
            {"datum", to_json(d)},
            {"datum_hash", io::datum_hash(d)},
            {"fan", to_json(ex.fan)},
            {"fixtures", fx},
            {"valuation_cone", to_json(spherical::valuation_cone(d))},
            {"is_horospherical", spherical::is_horospherical(d)}};
  const auto pol = spherical::moment_polytope(d);
  j["moment_polytope"] = to_json(pol);
  const auto rep = spherical::verify_toroidal_normal_fan(d, ex.fan);
  j["fan_verified"] = rep.verified();
  j["fan_complete"] = rep.complete;
  if (rep.verified() && rep.complete) {
    const auto m = spherical::orbit_space_model(d, ex.fan);
    j["face_count"] = m.faces.size();
    j["orbit_faces"] = io::index_list(m.orbit_faces);
    j["removed_faces"] = io::index_list(m.removed_faces);
    j["retained_faces"] = io::index_list(m.retained_faces);
    if (d.root_link) j["distinct_types"] = spherical::distinct_types(spherical::stratify(d, m));
  }
  return j;
}

/// Orders of vanishing computed by the Laurent oracle, with the per-sample values.
inline json oracle_report(std::uint64_t seed) {
  auto samples = [](const ValuationResult& r) {
    json a = json::array();
    for (const auto& s : r.samples) a.push_back(s ? json(*s) : json(nullptr));
    return a;
  };
  json out = {{"seed", seed}};
  const auto g = sl2_group_valuations(seed);
  out["sl2_group"] = {{"function", "x11"},
                      {"D", {{"order", io::to_json(g.color.order)}, {"samples", samples(g.color)}}},
                      {"Dinf", {{"order", io::to_json(g.boundary.order)}, {"samples", samples(g.boundary)}}}};
  json cubed = json::object();
  const std::size_t ks[3] = {2, 1, 0};
  const char* colors[3] = {"D12", "D13", "D23"};
  auto entry_of = [&](const std::vector<ValuationResult>& rs) {
    json v = json::array(), s = json::array();
    for (const auto& r : rs) {
      v.push_back(io::to_json(r.order));
      s.push_back(samples(r));
    }
    return json{{"vector", v}, {"samples", s}};
  };
  for (std::size_t c = 0; c < 3; ++c)
    cubed[colors[c]] = entry_of(sl2cubed_valuation(sl2cubed_color_curve(ks[c]), Shape::Upper, seed + c));
  for (std::size_t i = 0; i < 3; ++i)
    cubed["D" + std::to_string(i + 1)] = entry_of(sl2cubed_valuation(sl2cubed_boundary_curve(i), Shape::Generic, seed + 10 + i));
  out["sl2cubed"] = cubed;
  out["sl2cubed"]["functions"] = {"f12", "f13", "f23"};
  return out;
}

}  // namespace sphval::examples
