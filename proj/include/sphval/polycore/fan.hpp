#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "sphval/polycore/lattice.hpp"
#include "sphval/polycore/polytope.hpp"

namespace sphval::polycore {

class Fan {
 public:
  Fan() = default;
  explicit Fan(std::size_t ambient) : ambient_(ambient) {}

  /// Cones as given, without adding faces.
  static Fan from_cones(std::vector<Cone> cones, std::size_t ambient) {
    Fan f(ambient);
    for (auto& c : cones) f.add_unique(std::move(c));
    f.sort();
    return f;
  }

  /// The given cones together with all of their faces.
  static Fan face_closure(const std::vector<Cone>& cones, std::size_t ambient) {
    Fan f(ambient);
    for (const auto& c : cones)
      for (auto& face : cone_faces(c)) f.add_unique(std::move(face));
    f.sort();
    return f;
  }

  std::size_t ambient_rank() const { return ambient_; }
  const std::vector<Cone>& cones() const { return cones_; }
  bool empty() const { return cones_.empty(); }

  std::vector<Cone> maximal_cones() const {
    std::vector<Cone> out;
    for (std::size_t i = 0; i < cones_.size(); ++i) {
      bool maximal = true;
      for (std::size_t j = 0; j < cones_.size() && maximal; ++j)
        if (i != j && cones_[j].dimension() > cones_[i].dimension() && cones_[j].contains(cones_[i])) maximal = false;
      if (maximal) out.push_back(cones_[i]);
    }
    return out;
  }

  /// All distinct primitive rays of the fan.
  RatMatrix rays() const {
    RatMatrix out;
    for (const auto& c : cones_)
      for (const auto& r : c.rays())
        if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void add_unique(Cone c) {
    if (c.ambient_rank() != ambient_) fail(ErrorKind::InvalidArgument, "Fan: cone ambient rank mismatch");
    for (const auto& existing : cones_)
      if (existing == c) return;
    cones_.push_back(std::move(c));
  }
  void sort() {
    std::stable_sort(cones_.begin(), cones_.end(), [](const Cone& a, const Cone& b) {
      if (a.dimension() != b.dimension()) return a.dimension() < b.dimension();
      return a.rays() < b.rays();
    });
  }

  std::size_t ambient_ = 0;
  std::vector<Cone> cones_;
};

struct FanCheck {
  bool ok = true;
  std::string certificate;
};

/// Smoothness plus the fan axiom; the certificate names the first violation.
inline FanCheck is_smooth_simplicial_fan(const Fan& f) {
  const auto& cones = f.cones();
  for (std::size_t i = 0; i < cones.size(); ++i) {
    const Cone& c = cones[i];
    if (!c.is_pointed()) return {false, "cone " + std::to_string(i) + " is not pointed"};
    if (!c.is_simplicial())
      return {false, "cone " + std::to_string(i) + " is not simplicial (" + std::to_string(c.rays().size()) +
                         " rays, dimension " + std::to_string(c.dimension()) + ")"};
    const Integer idx = saturation_index(c.rays());
    if (idx != 1) return {false, "cone " + std::to_string(i) + " has determinant " + idx.get_str()};
  }
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = i + 1; j < cones.size(); ++j) {
      const Cone meet = intersect(cones[i], cones[j]);
      if (!is_face_of(meet, cones[i]) || !is_face_of(meet, cones[j]))
        return {false, "cones " + std::to_string(i) + " and " + std::to_string(j) + " do not meet in a common face"};
    }
  return {true, "smooth simplicial fan with " + std::to_string(cones.size()) + " cones"};
}

namespace detail {

/// Exact k-volume of cone ∩ [-1,1]^d, measured in coordinates `coords` (injective on span(c)).
inline Rational truncated_volume(const Cone& c, const std::vector<std::size_t>& coords) {
  const std::size_t d = c.ambient_rank();
  std::vector<Halfspace> hs;
  for (const auto& f : c.facet_normals()) hs.push_back({f, Rational(0)});
  for (const auto& e : c.equations()) {
    hs.push_back({e, Rational(0)});
    hs.push_back({-e, Rational(0)});
  }
  for (std::size_t i = 0; i < d; ++i) {
    hs.push_back({unit_vector(d, i), Rational(-1)});
    hs.push_back({-unit_vector(d, i), Rational(-1)});
  }
  const Polytope box = Polytope::from_halfspaces(std::move(hs), d);
  RatMatrix projected;
  for (const auto& v : box.vertices()) {
    RatVec p;
    for (auto k : coords) p.push_back(v[k]);
    projected.push_back(std::move(p));
  }
  return volume(Polytope::from_vertices(projected, coords.size()));
}

}  // namespace detail

/// True iff the maximal-dimensional cones of f cover c. Throws FanNotInsideCone.
inline bool fan_covers_cone(const Fan& f, const Cone& c) {
  for (std::size_t i = 0; i < f.cones().size(); ++i)
    for (const auto& g : f.cones()[i].generators())
      if (!c.contains(g))
        fail(ErrorKind::FanNotInsideCone, "fan cone " + std::to_string(i) + " has generator " + format_vec(g) +
                                              " outside the cone");
  const std::size_t k = c.dimension();
  if (k == 0) return true;
  const RatMatrix span = nullspace(c.equations(), c.ambient_rank());
  const std::vector<std::size_t> coords = rref(span, c.ambient_rank()).pivots;
  const Rational target = detail::truncated_volume(c, coords);
  Rational covered = 0;
  for (const auto& cone : f.cones())
    if (cone.dimension() == k) covered += detail::truncated_volume(cone, coords);
  return covered == target;
}

}  // namespace sphval::polycore
