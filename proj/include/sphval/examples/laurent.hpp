#pragma once

#include <map>
#include <string>
#include <vector>

#include "sphval/polycore/linalg.hpp"

namespace sphval::examples {

using polycore::RatMatrix;
using polycore::Rational;

/// Finite Laurent polynomial in t with exact rational coefficients.
class LaurentScalar {
 public:
  LaurentScalar() = default;
  LaurentScalar(const Rational& c) { add(0, c); }  // NOLINT: constants convert implicitly
  LaurentScalar(long c) : LaurentScalar(Rational(c)) {}  // NOLINT

  static LaurentScalar monomial(const Rational& c, long exponent) {
    LaurentScalar s;
    s.add(exponent, c);
    return s;
  }
  static LaurentScalar t(long exponent = 1) { return monomial(1, exponent); }

  bool is_zero() const { return coeff_.empty(); }
  /// Least exponent with a nonzero coefficient; the caller checks is_zero first.
  long order() const {
    if (is_zero()) fail(ErrorKind::IdenticallyZero, "order of the zero Laurent polynomial");
    return coeff_.begin()->first;
  }
  Rational coefficient(long e) const {
    auto it = coeff_.find(e);
    return it == coeff_.end() ? Rational(0) : it->second;
  }
  const std::map<long, Rational>& terms() const { return coeff_; }

  friend LaurentScalar operator+(LaurentScalar a, const LaurentScalar& b) {
    for (const auto& [e, c] : b.coeff_) a.add(e, c);
    return a;
  }
  friend LaurentScalar operator-(const LaurentScalar& a) {
    LaurentScalar r;
    for (const auto& [e, c] : a.coeff_) r.add(e, -c);
    return r;
  }
  friend LaurentScalar operator-(const LaurentScalar& a, const LaurentScalar& b) { return a + (-b); }
  friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
    LaurentScalar r;
    for (const auto& [e1, c1] : a.coeff_)
      for (const auto& [e2, c2] : b.coeff_) r.add(e1 + e2, c1 * c2);
    return r;
  }
  friend bool operator==(const LaurentScalar& a, const LaurentScalar& b) { return a.coeff_ == b.coeff_; }

  /// Substitutes t -> t^k.
  LaurentScalar rescale(long k) const {
    LaurentScalar r;
    for (const auto& [e, c] : coeff_) r.add(e * k, c);
    return r;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (const auto& [e, c] : coeff_) {
      if (!s.empty()) s += " + ";
      s += "(" + polycore::format_rational(c) + ")t^" + std::to_string(e);
    }
    return s;
  }

 private:
  void add(long e, const Rational& c) {
    if (sgn(c) == 0) return;
    auto& slot = coeff_[e];
    slot += c;
    if (sgn(slot) == 0) coeff_.erase(e);
  }

  std::map<long, Rational> coeff_;
};

using LaurentMatrix = std::vector<std::vector<LaurentScalar>>;

inline LaurentMatrix lmat(std::initializer_list<std::initializer_list<LaurentScalar>> rows) {
  LaurentMatrix m;
  for (auto r : rows) m.emplace_back(r);
  return m;
}

inline LaurentMatrix lift(const RatMatrix& m) {
  LaurentMatrix out;
  for (const auto& row : m) {
    std::vector<LaurentScalar> r;
    for (const auto& x : row) r.emplace_back(x);
    out.push_back(std::move(r));
  }
  return out;
}

inline LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  LaurentMatrix r(n, std::vector<LaurentScalar>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < k; ++l) r[i][j] = r[i][j] + a[i][l] * b[l][j];
  return r;
}

inline LaurentScalar det2(const LaurentMatrix& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

/// Inverse of a 2x2 Laurent matrix with determinant exactly 1.
inline LaurentMatrix inverse_sl2(const LaurentMatrix& m) {
  if (!(det2(m) == LaurentScalar(1))) fail(ErrorKind::InvalidArgument, "matrix is not in SL2 over Laurent polynomials");
  return {{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}};
}

inline RatMatrix inverse_rational2(const RatMatrix& m) {
  const Rational det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (sgn(det) == 0) fail(ErrorKind::InvalidArgument, "singular group element");
  return {{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}};
}

}  // namespace sphval::examples
