#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "sphval/polycore/cone.hpp"

namespace sphval::polycore {

/// normal . mu >= offset
struct Halfspace {
  RatVec normal;
  Rational offset;
};

struct FaceDescriptor {
  std::vector<std::size_t> active;  // indices of halfspaces tight on the face
  std::size_t dimension = 0;
  RatVec relative_interior_point;
  std::vector<std::size_t> vertices;  // indices into Polytope::vertices()
};

class Polytope {
 public:
  Polytope() = default;

  /// Halfspaces are kept verbatim (index order matters to callers). Throws Unbounded.
  static Polytope from_halfspaces(std::vector<Halfspace> halfspaces, std::size_t ambient) {
    RatMatrix cons;
    for (const auto& h : halfspaces) {
      if (h.normal.size() != ambient) fail(ErrorKind::InvalidArgument, "Polytope: halfspace length mismatch");
      RatVec row = h.normal;
      row.push_back(-h.offset);
      cons.push_back(std::move(row));
    }
    RatVec t = zeros(ambient + 1);
    t[ambient] = 1;
    cons.push_back(t);
    const RayDescription dd = double_description(cons, {}, ambient + 1);
    Polytope p;
    p.ambient_ = ambient;
    p.halfspaces_ = std::move(halfspaces);
    bool recession = !dd.lineality.empty();
    for (const auto& r : dd.rays) {
      if (sgn(r[ambient]) == 0) {
        recession = true;
        continue;
      }
      RatVec v(r.begin(), r.end() - 1);
      for (auto& x : v) x /= r[ambient];
      p.vertices_.push_back(std::move(v));
    }
    if (!p.vertices_.empty() && recession) fail(ErrorKind::Unbounded, "polytope has a recession direction");
    std::sort(p.vertices_.begin(), p.vertices_.end());
    return p;
  }

  /// Convex hull of a finite point set; an empty set gives the empty polytope.
  static Polytope from_vertices(const RatMatrix& points, std::size_t ambient) {
    if (points.empty()) {
      RatVec zero = zeros(ambient);
      return from_halfspaces({{zero, Rational(1)}}, ambient);
    }
    RatMatrix gens;
    for (const auto& pt : points) {
      if (pt.size() != ambient) fail(ErrorKind::InvalidArgument, "Polytope: point length mismatch");
      RatVec g = pt;
      g.push_back(1);
      gens.push_back(std::move(g));
    }
    const Cone hull = Cone::from_generators(gens, ambient + 1);
    std::vector<Halfspace> hs;
    auto split = [&](const RatVec& n) {
      RatVec normal(n.begin(), n.end() - 1);
      return Halfspace{normal, -n[ambient]};
    };
    for (const auto& e : hull.equations()) {
      hs.push_back(split(e));
      hs.push_back(split(-e));
    }
    for (const auto& f : hull.facet_normals()) {
      RatVec normal(f.begin(), f.end() - 1);
      if (is_zero(normal)) continue;  // the t >= 0 facet
      hs.push_back(split(f));
    }
    return from_halfspaces(std::move(hs), ambient);
  }

  std::size_t ambient_rank() const { return ambient_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const RatMatrix& vertices() const { return vertices_; }
  bool is_empty() const { return vertices_.empty(); }

  bool contains(const RatVec& mu) const {
    return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                       [&](const Halfspace& h) { return dot(h.normal, mu) >= h.offset; });
  }

  bool is_tight(std::size_t i, const RatVec& mu) const {
    return dot(halfspaces_[i].normal, mu) == halfspaces_[i].offset;
  }

  std::vector<std::size_t> active_set(const RatVec& mu) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < halfspaces_.size(); ++i)
      if (is_tight(i, mu)) out.push_back(i);
    return out;
  }

  /// Affine dimension; -1 for the empty polytope.
  long dimension() const {
    if (is_empty()) return -1;
    return static_cast<long>(affine_rank(vertices_));
  }

  /// Drops halfspaces that are not tight at any vertex, plus duplicates.
  Polytope irredundant() const {
    std::vector<Halfspace> keep;
    for (std::size_t i = 0; i < halfspaces_.size(); ++i) {
      bool tight = std::any_of(vertices_.begin(), vertices_.end(), [&](const RatVec& v) { return is_tight(i, v); });
      if (!tight) continue;
      const auto& h = halfspaces_[i];
      bool dup = std::any_of(keep.begin(), keep.end(),
                             [&](const Halfspace& k) { return k.normal == h.normal && k.offset == h.offset; });
      if (!dup) keep.push_back(h);
    }
    return from_halfspaces(std::move(keep), ambient_);
  }

  static std::size_t affine_rank(const RatMatrix& pts) {
    if (pts.size() < 2) return 0;
    RatMatrix diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
    return rank(diffs, pts[0].size());
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<Halfspace> halfspaces_;
  RatMatrix vertices_;
};

inline RatVec barycenter(const RatMatrix& pts) {
  RatVec c = zeros(pts.front().size());
  for (const auto& p : pts) c = c + p;
  return Rational(1, static_cast<unsigned long>(pts.size())) * c;
}

/// All nonempty faces including the polytope itself, ordered by dimension then active set.
inline std::vector<FaceDescriptor> face_lattice(const Polytope& p) {
  if (p.is_empty()) return {};
  const auto& verts = p.vertices();
  std::vector<std::vector<std::size_t>> vact;
  for (const auto& v : verts) vact.push_back(p.active_set(v));

  std::set<std::vector<std::size_t>> closed(vact.begin(), vact.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<std::size_t>> current(closed.begin(), closed.end());
    for (std::size_t i = 0; i < current.size(); ++i)
      for (std::size_t j = i + 1; j < current.size(); ++j)
        if (closed.insert(detail::intersect(current[i], current[j])).second) grew = true;
  }
  std::set<std::vector<std::size_t>> seen;
  std::vector<FaceDescriptor> faces;
  // each closed set S is cut out by its halfspaces; the face's active set is what all its vertices share
  for (const auto& s : closed) {
    std::vector<std::size_t> members;
    for (std::size_t v = 0; v < verts.size(); ++v)
      if (detail::includes(vact[v], s)) members.push_back(v);
    if (members.empty() || !seen.insert(members).second) continue;
    std::vector<std::size_t> active = vact[members.front()];
    for (auto v : members) active = detail::intersect(active, vact[v]);
    RatMatrix pts;
    for (auto v : members) pts.push_back(verts[v]);
    FaceDescriptor f;
    f.active = std::move(active);
    f.dimension = Polytope::affine_rank(pts);
    f.relative_interior_point = barycenter(pts);
    f.vertices = std::move(members);
    faces.push_back(std::move(f));
  }
  std::sort(faces.begin(), faces.end(), [](const FaceDescriptor& a, const FaceDescriptor& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    return a.active < b.active;
  });
  return faces;
}

/// Minimizing convention: the cone of functionals whose minimum over p is attained on f.
inline Cone normal_cone(const Polytope& p, const FaceDescriptor& f) {
  RatMatrix gens;
  for (auto i : f.active) gens.push_back(p.halfspaces()[i].normal);
  return Cone::from_generators(gens, p.ambient_rank());
}

/// Pulling triangulation of a full-dimensional polytope in its ambient space;
/// returns simplices as vertex index lists.
inline std::vector<std::vector<std::size_t>> triangulate(const Polytope& p) {
  const auto faces = face_lattice(p);
  std::vector<std::vector<std::size_t>> out;
  if (faces.empty()) return out;
  // recursive on faces: pull the smallest vertex, cone over triangulations of facets not containing it
  auto facets_of = [&](const FaceDescriptor& f) {
    std::vector<const FaceDescriptor*> sub;
    for (const auto& g : faces)
      if (g.dimension + 1 == f.dimension && detail::includes(f.vertices, g.vertices) && g.vertices != f.vertices)
        sub.push_back(&g);
    return sub;
  };
  auto rec = [&](auto&& self, const FaceDescriptor& f) -> std::vector<std::vector<std::size_t>> {
    if (f.dimension == 0) return {{f.vertices.front()}};
    const std::size_t apex = f.vertices.front();
    std::vector<std::vector<std::size_t>> simp;
    for (const auto* g : facets_of(f)) {
      if (std::binary_search(g->vertices.begin(), g->vertices.end(), apex)) continue;
      for (auto s : self(self, *g)) {
        s.insert(s.begin(), apex);
        simp.push_back(std::move(s));
      }
    }
    return simp;
  };
  return rec(rec, faces.back());
}

/// Exact volume of a polytope that is full-dimensional in its ambient space (0 otherwise).
inline Rational volume(const Polytope& p) {
  const std::size_t d = p.ambient_rank();
  if (p.is_empty() || p.dimension() != static_cast<long>(d)) return 0;
  if (d == 0) return 1;
  Rational total = 0;
  Integer fact = 1;
  for (std::size_t i = 2; i <= d; ++i) fact *= static_cast<unsigned long>(i);
  const auto& verts = p.vertices();
  for (const auto& s : triangulate(p)) {
    RatMatrix m;
    for (std::size_t i = 1; i < s.size(); ++i) m.push_back(verts[s[i]] - verts[s[0]]);
    Rational det = determinant(m);
    total += abs(det);
  }
  return total / Rational(fact);
}

}  // namespace sphval::polycore
