#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sphval/polycore/cone.hpp"

namespace sphval::rootsys {

using polycore::Cone;
using polycore::RatMatrix;
using polycore::RatVec;
using polycore::Rational;
using polycore::operator+;
using polycore::operator-;
using polycore::operator*;

enum class RootType { A1Product, TypeA, Torus };

/// Root data in one coordinate space where roots act by the dot product.
///   A1^k : coordinates are multiples of the fundamental weights, roots are +-2 e_i.
///   A(n) : type A_{n-1} in epsilon coordinates of R^n, roots e_i - e_j.
///   T^r  : a torus of rank r, no roots.
class RootSystem {
 public:
  static RootSystem a1_product(std::size_t k) {
    RootSystem rs(RootType::A1Product, k, k);
    for (std::size_t i = 0; i < k; ++i) rs.add_root(Rational(2) * polycore::unit_vector(k, i), "a" + std::to_string(i + 1), true);
    for (std::size_t i = 0; i < k; ++i) rs.add_root(Rational(-2) * polycore::unit_vector(k, i), "-a" + std::to_string(i + 1), false);
    for (std::size_t i = 0; i < k; ++i) rs.simple_.push_back(i);
    return rs;
  }

  static RootSystem type_a(std::size_t n) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "A(n) needs n >= 1");
    RootSystem rs(RootType::TypeA, n, n);
    auto label = [](std::size_t i, std::size_t j) { return "e" + std::to_string(i + 1) + "-e" + std::to_string(j + 1); };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        rs.add_root(polycore::unit_vector(n, i) - polycore::unit_vector(n, j), label(i, j), true);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        rs.add_root(polycore::unit_vector(n, j) - polycore::unit_vector(n, i), label(j, i), false);
    for (std::size_t i = 0; i + 1 < n; ++i) rs.simple_.push_back(rs.find_root(polycore::unit_vector(n, i) - polycore::unit_vector(n, i + 1)));
    return rs;
  }

  static RootSystem torus(std::size_t r) { return RootSystem(RootType::Torus, r, r); }

  RootType type() const { return type_; }
  std::size_t parameter() const { return param_; }
  std::size_t rank() const { return dim_; }  // dimension of the coordinate space
  const RatMatrix& roots() const { return roots_; }
  const RatMatrix& coroots() const { return coroots_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::size_t>& simple_indices() const { return simple_; }
  bool is_positive(std::size_t i) const { return positive_[i]; }
  std::vector<std::size_t> positive_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < roots_.size(); ++i)
      if (positive_[i]) out.push_back(i);
    return out;
  }

  std::string descriptor() const {
    switch (type_) {
      case RootType::A1Product: return "A1^" + std::to_string(param_);
      case RootType::TypeA: return "A(" + std::to_string(param_) + ")";
      case RootType::Torus: return "T^" + std::to_string(param_);
    }
    return "";
  }

  template <class V>
  auto pairing(std::size_t root, const V& mu) const {
    typename V::value_type s{0};
    for (std::size_t i = 0; i < dim_; ++i) s += to_scalar<typename V::value_type>(roots_[root][i]) * mu[i];
    return s;
  }

  /// Simple reflection s_i applied to x (any scalar type).
  template <class V>
  V reflect(std::size_t simple, const V& x) const {
    const std::size_t r = simple_[simple];
    using S = typename V::value_type;
    // alpha.alpha is 4 for A1 roots and 2 for type A roots
    const S norm = to_scalar<S>(polycore::dot(roots_[r], roots_[r]));
    const S c = S(2) * pairing(r, x) / norm;
    V y = x;
    for (std::size_t i = 0; i < dim_; ++i) y[i] -= c * to_scalar<S>(roots_[r][i]);
    return y;
  }

  std::size_t find_root(const RatVec& alpha) const {
    auto it = std::find(roots_.begin(), roots_.end(), alpha);
    if (it == roots_.end()) fail(ErrorKind::InvalidArgument, "not a root: " + polycore::format_vec(alpha));
    return static_cast<std::size_t>(it - roots_.begin());
  }

  template <class S>
  static S to_scalar(const Rational& q) {
    if constexpr (std::is_same_v<S, Rational>) return q;
    else return static_cast<S>(q.get_d());
  }

 private:
  RootSystem(RootType t, std::size_t param, std::size_t dim) : type_(t), param_(param), dim_(dim) {}

  void add_root(RatVec alpha, std::string label, bool positive) {
    const Rational norm = polycore::dot(alpha, alpha);
    coroots_.push_back(Rational(Rational(2) / norm) * alpha);
    roots_.push_back(std::move(alpha));
    labels_.push_back(std::move(label));
    positive_.push_back(positive);
  }

  RootType type_;
  std::size_t param_;
  std::size_t dim_;
  RatMatrix roots_;
  RatMatrix coroots_;
  std::vector<std::string> labels_;
  std::vector<bool> positive_;
  std::vector<std::size_t> simple_;
};

/// {x : alpha(x) <= 0 for every positive root}; type A is cut to the sum-zero hyperplane.
inline Cone negative_chamber(const RootSystem& rs) {
  RatMatrix ineq, eq;
  for (auto s : rs.simple_indices()) ineq.push_back(-rs.roots()[s]);
  if (rs.type() == RootType::TypeA) eq.push_back(RatVec(rs.rank(), Rational(1)));
  return Cone::from_inequalities(ineq, eq, rs.rank());
}

template <class V>
struct ChamberPoint {
  V coordinates;
  std::vector<std::size_t> word;  // simple reflections in the order applied
};

/// Chamber representative of the Weyl orbit of x. Applies the lowest-index simple
/// reflection with alpha_i(x) > tol until none is left; the word is reduced.
template <class V>
ChamberPoint<V> dominance_project(const RootSystem& rs, V x, typename V::value_type tol = typename V::value_type(0)) {
  if (x.size() != rs.rank()) fail(ErrorKind::InvalidArgument, "dominance_project: wrong coordinate length");
  ChamberPoint<V> out;
  for (;;) {
    bool moved = false;
    for (std::size_t i = 0; i < rs.simple_indices().size(); ++i) {
      if (rs.pairing(rs.simple_indices()[i], x) > tol) {
        x = rs.reflect(i, x);
        out.word.push_back(i);
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  out.coordinates = std::move(x);
  return out;
}

template <class V>
bool in_negative_chamber(const RootSystem& rs, const V& x, typename V::value_type tol = typename V::value_type(0)) {
  for (auto s : rs.simple_indices())
    if (rs.pairing(s, x) > tol) return false;
  return true;
}

/// Indices of roots with <alpha, mu> >= 0.
inline std::vector<std::size_t> parabolic_roots(const RootSystem& rs, const RatVec& mu) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rs.roots().size(); ++i)
    if (sgn(rs.pairing(i, mu)) >= 0) out.push_back(i);
  return out;
}

/// Indices of roots with <alpha, mu> = 0.
inline std::vector<std::size_t> levi_roots(const RootSystem& rs, const RatVec& mu) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rs.roots().size(); ++i)
    if (sgn(rs.pairing(i, mu)) == 0) out.push_back(i);
  return out;
}

/// Full Weyl orbit of an exact point, by breadth-first search over simple reflections.
inline std::vector<RatVec> weyl_orbit(const RootSystem& rs, const RatVec& x) {
  std::set<RatVec> seen{x};
  std::vector<RatVec> queue{x};
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (std::size_t i = 0; i < rs.simple_indices().size(); ++i) {
      RatVec y = rs.reflect(i, queue[head]);
      if (seen.insert(y).second) queue.push_back(y);
    }
  return {seen.begin(), seen.end()};
}

inline RootSystem parse_descriptor(const std::string& type, std::size_t param) {
  if (type == "A1^k") return RootSystem::a1_product(param);
  if (type == "A(n)") {
    if (param > 5) fail(ErrorKind::InvalidArgument, "A(n) supported for n <= 5");
    return RootSystem::type_a(param);
  }
  if (type == "T^r") return RootSystem::torus(param);
  fail(ErrorKind::InvalidArgument, "unknown root system type '" + type + "'");
}

}  // namespace sphval::rootsys
