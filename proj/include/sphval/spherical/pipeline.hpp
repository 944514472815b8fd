#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "sphval/polycore/fan.hpp"
#include "sphval/spherical/datum.hpp"

namespace sphval::spherical {

using polycore::Cone;
using polycore::FaceDescriptor;
using polycore::Fan;
using polycore::Polytope;

/// {rho : rho(sigma_i) <= 0 for every spherical root}.
inline Cone valuation_cone(const SphericalDatum& d) {
  RatMatrix ineq;
  for (const auto& s : d.spherical_roots) ineq.push_back(-s);
  return Cone::from_inequalities(ineq, {}, d.rank);
}

inline bool is_horospherical(const SphericalDatum& d) { return d.spherical_roots.empty(); }

/// Halfspace i is v_i . mu >= v_i . kappa - m_i, in divisor order.
inline Polytope moment_polytope(const SphericalDatum& d) {
  std::vector<polycore::Halfspace> hs;
  for (const auto& div : d.divisors) hs.push_back({div.v, polycore::dot(div.v, d.kappa) - div.m});
  return Polytope::from_halfspaces(std::move(hs), d.rank);
}

namespace detail {

inline std::size_t require_label(const SphericalDatum& d, const std::string& label) {
  auto i = d.divisor_index(label);
  if (!i) fail(ErrorKind::InvalidArgument, "unknown divisor label '" + label + "'");
  return *i;
}

inline bool has_g_stable_active(const SphericalDatum& d, const FaceDescriptor& f) {
  return std::any_of(f.active.begin(), f.active.end(), [&](std::size_t i) { return d.divisors[i].g_stable; });
}

}  // namespace detail

/// The face of Pol on which the listed G-stable divisors are all tight.
inline FaceDescriptor orbit_face(const SphericalDatum& d, const Polytope& pol, const std::vector<std::string>& labels) {
  std::vector<std::size_t> idx;
  for (const auto& l : labels) {
    auto i = detail::require_label(d, l);
    if (!d.divisors[i].g_stable) fail(ErrorKind::InvalidArgument, "divisor '" + l + "' is not G-stable");
    idx.push_back(i);
  }
  std::sort(idx.begin(), idx.end());
  std::vector<std::size_t> verts;
  for (std::size_t v = 0; v < pol.vertices().size(); ++v)
    if (std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return pol.is_tight(i, pol.vertices()[v]); }))
      verts.push_back(v);
  if (verts.empty()) fail(ErrorKind::InfeasibleOrbit, "equalities cut the moment polytope empty");
  for (const auto& f : polycore::face_lattice(pol))
    if (f.vertices == verts) return f;
  fail(ErrorKind::InfeasibleOrbit, "no face matches the equality set");
}

inline FaceDescriptor orbit_face(const SphericalDatum& d, const std::vector<std::string>& labels) {
  return orbit_face(d, moment_polytope(d), labels);
}

struct ConeRealization {
  std::size_t cone_index = 0;
  std::optional<std::size_t> face_index;  // into face_lattice(moment_polytope)
};

struct ToroidalReport {
  std::vector<ConeRealization> realizations;
  bool all_realized = true;
  bool inside_valuation_cone = true;
  bool complete = false;  // fan covers the valuation cone
  bool verified() const { return all_realized && inside_valuation_cone; }
};

/// Matches every fan cone with a face of Pol having exactly that normal cone.
/// Throws NotToroidal when a fan ray is not a G-stable divisor vector.
inline ToroidalReport verify_toroidal_normal_fan(const SphericalDatum& d, const Fan& fan) {
  if (fan.ambient_rank() != d.rank) fail(ErrorKind::InvalidArgument, "fan rank differs from the datum rank");
  for (const auto& r : fan.rays()) {
    bool found = std::any_of(d.divisors.begin(), d.divisors.end(),
                             [&](const DivisorRecord& div) { return div.g_stable && polycore::primitive(div.v) == r; });
    if (!found) fail(ErrorKind::NotToroidal, "fan ray " + polycore::format_vec(r) + " is not a G-stable divisor vector");
  }
  for (const auto& c : fan.cones())
    if (!c.lineality().empty())
      fail(ErrorKind::NotToroidal, "fan cone with lineality cannot come from G-stable divisors");
  const Polytope pol = moment_polytope(d);
  const auto faces = polycore::face_lattice(pol);
  std::vector<Cone> normals;
  for (const auto& f : faces) normals.push_back(polycore::normal_cone(pol, f));
  const Cone val = valuation_cone(d);
  ToroidalReport rep;
  for (std::size_t c = 0; c < fan.cones().size(); ++c) {
    ConeRealization cr{c, std::nullopt};
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (normals[f] == fan.cones()[c]) {
        cr.face_index = f;
        break;
      }
    if (!cr.face_index) rep.all_realized = false;
    if (!val.contains(fan.cones()[c])) rep.inside_valuation_cone = false;
    rep.realizations.push_back(cr);
  }
  rep.complete = rep.inside_valuation_cone && polycore::fan_covers_cone(fan, val);
  return rep;
}

struct OrbitSpaceModel {
  Polytope polytope;
  std::vector<FaceDescriptor> faces;         // full face lattice
  std::vector<std::size_t> orbit_faces;      // faces whose normal cone is a nonzero fan cone
  std::vector<std::size_t> removed_faces;    // orbit faces and their subfaces
  std::vector<std::size_t> retained_faces;   // the rest
};

/// Splits the face lattice without checking completeness of the fan.
/// Removed faces are the orbit faces together with all of their subfaces.
inline OrbitSpaceModel partition_faces(const SphericalDatum& d, const Fan& fan) {
  OrbitSpaceModel m;
  m.polytope = moment_polytope(d);
  m.faces = polycore::face_lattice(m.polytope);
  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    const Cone nc = polycore::normal_cone(m.polytope, m.faces[f]);
    if (nc.is_zero_cone()) continue;
    for (const auto& c : fan.cones())
      if (c == nc) {
        m.orbit_faces.push_back(f);
        break;
      }
  }
  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    bool removed = std::any_of(m.orbit_faces.begin(), m.orbit_faces.end(), [&](std::size_t o) {
      return polycore::detail::includes(m.faces[o].vertices, m.faces[f].vertices);
    });
    (removed ? m.removed_faces : m.retained_faces).push_back(f);
  }
  return m;
}

/// The model X/K = Pol minus the closed orbit faces. Throws IncompleteFan.
inline OrbitSpaceModel orbit_space_model(const SphericalDatum& d, const Fan& fan) {
  const ToroidalReport rep = verify_toroidal_normal_fan(d, fan);
  if (!rep.verified()) fail(ErrorKind::NotToroidal, "fan is not realized by the normal fan of the moment polytope");
  if (!rep.complete) fail(ErrorKind::IncompleteFan, "fan does not cover the valuation cone");
  return partition_faces(d, fan);
}

inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct StratificationReport {
  FaceDescriptor face;
  std::vector<std::string> active_b_divisors;
  std::vector<std::string> chart_complement;  // colors with strict inequality
  RatVec character_point;
  std::vector<std::size_t> parabolic_roots;
  std::vector<std::size_t> levi_roots;
  std::string type_key;
  bool general_satellite = false;  // Levi part is everything
  bool most_degenerate = false;    // no active divisor
};

inline StratificationReport stratification_report(const SphericalDatum& d, const Polytope& pol,
                                                  const FaceDescriptor& face) {
  if (!d.root_link) fail(ErrorKind::MissingRootSystem, "datum '" + d.name + "' has no root system link");
  if (detail::has_g_stable_active(d, face))
    fail(ErrorKind::RemovedFace, "face lies on a G-stable divisor and is removed from X/K");
  StratificationReport r;
  r.face = face;
  const RatVec& mu = face.relative_interior_point;
  for (std::size_t i = 0; i < d.divisors.size(); ++i) {
    if (pol.is_tight(i, mu)) r.active_b_divisors.push_back(d.divisors[i].label);
    else if (!d.divisors[i].g_stable) r.chart_complement.push_back(d.divisors[i].label);
  }
  const auto& rs = d.root_link->root_system;
  r.character_point = d.character_point(mu);
  r.parabolic_roots = rootsys::parabolic_roots(rs, r.character_point);
  r.levi_roots = rootsys::levi_roots(rs, r.character_point);
  std::string canon = "active=";
  for (const auto& a : r.active_b_divisors) canon += a + ",";
  canon += ";levi=";
  for (auto l : r.levi_roots) canon += std::to_string(l) + ",";
  r.type_key = fnv1a_hex(canon);
  r.general_satellite = r.levi_roots.size() == rs.roots().size();
  r.most_degenerate = r.active_b_divisors.empty();
  return r;
}

inline std::vector<StratificationReport> stratify(const SphericalDatum& d, const OrbitSpaceModel& m) {
  std::vector<StratificationReport> out;
  for (auto f : m.retained_faces) out.push_back(stratification_report(d, m.polytope, m.faces[f]));
  return out;
}

inline std::size_t distinct_types(const std::vector<StratificationReport>& reports) {
  std::set<std::string> keys;
  for (const auto& r : reports) keys.insert(r.type_key);
  return keys.size();
}

}  // namespace sphval::spherical
