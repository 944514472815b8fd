#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sphval/polycore/linalg.hpp"

namespace sphval::polycore {

/// Double-description output for {x : A x >= 0, E x = 0}: a lineality basis plus the
/// extreme rays of the pointed part (modulo lineality).
struct RayDescription {
  RatMatrix lineality;
  RatMatrix rays;
};

namespace detail {

using Incidence = std::vector<std::size_t>;  // sorted constraint indices tight on a ray

inline Incidence intersect(const Incidence& a, const Incidence& b) {
  Incidence out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool includes(const Incidence& super, const Incidence& sub) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

inline RatVec axpy(const RatVec& x, const Rational& s, const RatVec& y) {  // x + s y
  RatVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + s * y[i];
  return r;
}

}  // namespace detail

/// Incremental double description with the combinatorial adjacency test.
inline RayDescription double_description(const RatMatrix& inequalities, const RatMatrix& equations,
                                         std::size_t dim) {
  RatMatrix constraints = inequalities;
  for (const auto& e : equations) {
    constraints.push_back(e);
    constraints.push_back(-e);
  }
  for (const auto& c : constraints)
    if (c.size() != dim) fail(ErrorKind::InvalidArgument, "double_description: constraint length mismatch");

  RatMatrix lin;
  for (std::size_t i = 0; i < dim; ++i) lin.push_back(unit_vector(dim, i));
  RatMatrix rays;
  std::vector<detail::Incidence> inc;

  for (std::size_t c = 0; c < constraints.size(); ++c) {
    const RatVec& a = constraints[c];
    auto it = std::find_if(lin.begin(), lin.end(), [&](const RatVec& l) { return sgn(dot(a, l)) != 0; });
    if (it != lin.end()) {
      RatVec l = *it;
      lin.erase(it);
      Rational al = dot(a, l);
      if (sgn(al) < 0) {
        l = -l;
        al = -al;
      }
      for (auto& other : lin) other = primitive(detail::axpy(other, -dot(a, other) / al, l));
      for (std::size_t r = 0; r < rays.size(); ++r) {
        rays[r] = primitive(detail::axpy(rays[r], -dot(a, rays[r]) / al, l));
        inc[r].push_back(c);
      }
      detail::Incidence li;
      for (std::size_t p = 0; p < c; ++p) li.push_back(p);
      rays.push_back(primitive(l));
      inc.push_back(std::move(li));
      continue;
    }
    std::vector<Rational> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(a, rays[r]);
      if (sgn(val[r]) > 0) pos.push_back(r);
      else if (sgn(val[r]) < 0) neg.push_back(r);
    }
    RatMatrix next;
    std::vector<detail::Incidence> next_inc;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (sgn(val[r]) < 0) continue;
      next.push_back(rays[r]);
      detail::Incidence z = inc[r];
      if (sgn(val[r]) == 0) z.push_back(c);
      next_inc.push_back(std::move(z));
    }
    for (auto p : pos) {
      for (auto n : neg) {
        const detail::Incidence common = detail::intersect(inc[p], inc[n]);
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (detail::includes(inc[r], common)) adjacent = false;
        }
        if (!adjacent) continue;
        RatVec combo(dim);
        for (std::size_t i = 0; i < dim; ++i) combo[i] = val[p] * rays[n][i] - val[n] * rays[p][i];
        next.push_back(primitive(combo));
        detail::Incidence z = common;
        z.push_back(c);
        next_inc.push_back(std::move(z));
      }
    }
    rays = std::move(next);
    inc = std::move(next_inc);
  }
  return {lin, rays};
}

namespace detail {

inline RatMatrix canonical_basis(const RatMatrix& vectors, std::size_t dim) {
  RatMatrix out;
  for (auto& row : rref(vectors, dim).rows) out.push_back(primitive(row));
  return out;
}

/// Orthogonal projection of x onto the complement of span(basis).
inline RatVec project_out(const RatVec& x, const RatMatrix& basis) {
  if (basis.empty()) return x;
  const std::size_t k = basis.size();
  RatMatrix gram(k, RatVec(k));
  RatVec rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
    rhs[i] = dot(basis[i], x);
  }
  const auto coeff = solve_unique(gram, rhs, k);
  RatVec r = x;
  for (std::size_t i = 0; i < k; ++i) r = axpy(r, -(*coeff)[i], basis[i]);
  return r;
}

inline void sort_unique(RatMatrix& m) {
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
}

}  // namespace detail

/// Rational polyhedral cone kept in a canonical double representation:
/// primitive extreme rays plus a lineality basis, and primitive irredundant facet
/// normals (n . x >= 0) plus equations (n . x = 0) cutting out the linear span.
class Cone {
 public:
  Cone() = default;

  static Cone from_generators(const RatMatrix& generators, std::size_t ambient) {
    for (const auto& g : generators)
      if (g.size() != ambient) fail(ErrorKind::InvalidArgument, "Cone: generator length mismatch");
    // facets of C are the extreme rays of the dual cone {y : y . g >= 0}
    const RayDescription dual = double_description(generators, {}, ambient);
    return from_inequalities(dual.rays, dual.lineality, ambient);
  }

  static Cone from_inequalities(const RatMatrix& inequalities, const RatMatrix& equations, std::size_t ambient) {
    const RayDescription primal = double_description(inequalities, equations, ambient);
    Cone c;
    c.ambient_ = ambient;
    c.lineality_ = detail::canonical_basis(primal.lineality, ambient);
    for (const auto& r : primal.rays) {
      RatVec p = primitive(detail::project_out(r, c.lineality_));
      if (!is_zero(p)) c.rays_.push_back(std::move(p));
    }
    detail::sort_unique(c.rays_);
    const RayDescription dual = double_description(c.generators(), {}, ambient);
    c.equations_ = detail::canonical_basis(dual.lineality, ambient);
    for (const auto& f : dual.rays) {
      RatVec p = primitive(detail::project_out(f, c.equations_));
      if (!is_zero(p)) c.facets_.push_back(std::move(p));
    }
    detail::sort_unique(c.facets_);
    return c;
  }

  static Cone zero(std::size_t ambient) { return from_generators({}, ambient); }
  static Cone whole(std::size_t ambient) { return from_inequalities({}, {}, ambient); }

  std::size_t ambient_rank() const { return ambient_; }
  const RatMatrix& rays() const { return rays_; }
  const RatMatrix& lineality() const { return lineality_; }
  const RatMatrix& facet_normals() const { return facets_; }
  const RatMatrix& equations() const { return equations_; }

  /// Rays followed by +/- each lineality vector; generates the cone.
  RatMatrix generators() const {
    RatMatrix g = rays_;
    for (const auto& l : lineality_) {
      g.push_back(l);
      g.push_back(-l);
    }
    return g;
  }

  std::size_t dimension() const { return ambient_ - equations_.size(); }
  bool is_pointed() const { return lineality_.empty(); }
  bool is_zero_cone() const { return rays_.empty() && lineality_.empty(); }
  bool is_simplicial() const { return is_pointed() && rays_.size() == dimension(); }

  bool contains(const RatVec& x) const {
    for (const auto& e : equations_)
      if (sgn(dot(e, x)) != 0) return false;
    for (const auto& f : facets_)
      if (sgn(dot(f, x)) < 0) return false;
    return true;
  }

  bool contains(const Cone& other) const {
    for (const auto& g : other.generators())
      if (!contains(g)) return false;
    return true;
  }

  bool contains_in_relative_interior(const RatVec& x) const {
    if (!contains(x)) return false;
    for (const auto& f : facets_)
      if (sgn(dot(f, x)) == 0) return false;
    return true;
  }

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.ambient_ == b.ambient_ && a.contains(b) && b.contains(a);
  }

  /// Sum of the rays plus nothing from the lineality; lies in the relative interior.
  RatVec interior_point() const {
    RatVec p = zeros(ambient_);
    for (const auto& r : rays_) p = p + r;
    return p;
  }

 private:
  std::size_t ambient_ = 0;
  RatMatrix rays_;
  RatMatrix lineality_;
  RatMatrix facets_;
  RatMatrix equations_;
};

inline Cone intersect(const Cone& a, const Cone& b) {
  RatMatrix ineq = a.facet_normals();
  ineq.insert(ineq.end(), b.facet_normals().begin(), b.facet_normals().end());
  RatMatrix eq = a.equations();
  eq.insert(eq.end(), b.equations().begin(), b.equations().end());
  return Cone::from_inequalities(ineq, eq, a.ambient_rank());
}

/// The smallest face of c containing the subcone s (s must lie in c).
inline Cone minimal_face_containing(const Cone& c, const Cone& s) {
  RatMatrix eq = c.equations();
  RatMatrix ineq;
  const RatMatrix gens = s.generators();
  for (const auto& f : c.facet_normals()) {
    bool tight = std::all_of(gens.begin(), gens.end(), [&](const RatVec& g) { return sgn(dot(f, g)) == 0; });
    if (tight) eq.push_back(f);
    else ineq.push_back(f);
  }
  return Cone::from_inequalities(ineq, eq, c.ambient_rank());
}

inline bool is_face_of(const Cone& f, const Cone& c) {
  if (!c.contains(f)) return false;
  return minimal_face_containing(c, f) == f;
}

/// All faces, from the minimal one (the lineality space) to the cone itself,
/// ordered by dimension and then by their ray lists.
inline std::vector<Cone> cone_faces(const Cone& c) {
  const auto& facets = c.facet_normals();
  const auto& rays = c.rays();
  std::vector<detail::Incidence> zr(rays.size());
  for (std::size_t r = 0; r < rays.size(); ++r)
    for (std::size_t f = 0; f < facets.size(); ++f)
      if (sgn(dot(facets[f], rays[r])) == 0) zr[r].push_back(f);

  std::set<detail::Incidence> closed;
  detail::Incidence all;
  for (std::size_t f = 0; f < facets.size(); ++f) all.push_back(f);
  closed.insert(all);
  closed.insert({});
  for (const auto& z : zr) closed.insert(z);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<detail::Incidence> current(closed.begin(), closed.end());
    for (std::size_t i = 0; i < current.size(); ++i)
      for (std::size_t j = i + 1; j < current.size(); ++j)
        if (closed.insert(detail::intersect(current[i], current[j])).second) grew = true;
  }
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::pair<std::vector<std::size_t>, Cone>> faces;
  for (const auto& s : closed) {
    std::vector<std::size_t> members;
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (detail::includes(zr[r], s)) members.push_back(r);
    if (!seen.insert(members).second) continue;
    RatMatrix gens;
    for (auto r : members) gens.push_back(rays[r]);
    for (const auto& l : c.lineality()) {
      gens.push_back(l);
      gens.push_back(-l);
    }
    faces.emplace_back(members, Cone::from_generators(gens, c.ambient_rank()));
  }
  std::sort(faces.begin(), faces.end(), [](const auto& a, const auto& b) {
    if (a.second.dimension() != b.second.dimension()) return a.second.dimension() < b.second.dimension();
    return a.second.rays() < b.second.rays();
  });
  std::vector<Cone> out;
  for (auto& f : faces) out.push_back(std::move(f.second));
  return out;
}

}  // namespace sphval::polycore
