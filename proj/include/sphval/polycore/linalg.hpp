#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "sphval/polycore/rational.hpp"

namespace sphval::polycore {

/// Row-major exact matrix.
using RatMatrix = std::vector<RatVec>;

struct RowEchelon {
  RatMatrix rows;                    // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column of each row
};

inline RowEchelon rref(RatMatrix m, std::size_t ncols) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    const Rational inv = 1 / m[r][c];
    for (std::size_t k = c; k < ncols; ++k) m[r][k] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t k = c; k < ncols; ++k) m[i][k] -= f * m[r][k];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

inline std::size_t rank(const RatMatrix& m, std::size_t ncols) { return rref(m, ncols).pivots.size(); }

inline std::size_t rank(const RatMatrix& m) { return m.empty() ? 0 : rank(m, m.front().size()); }

/// Basis of {x : row . x = 0 for every row}.
inline RatMatrix nullspace(const RatMatrix& m, std::size_t ncols) {
  const RowEchelon e = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  RatMatrix basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    RatVec x = zeros(ncols);
    x[free] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) x[e.pivots[i]] = -e.rows[i][free];
    basis.push_back(primitive(x));
  }
  return basis;
}

inline Rational determinant(RatMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
    }
  }
  return det;
}

/// Unique solution of A x = b, or nullopt when the system is inconsistent or underdetermined.
inline std::optional<RatVec> solve_unique(const RatMatrix& a, const RatVec& b, std::size_t ncols) {
  RatMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  const RowEchelon e = rref(aug, ncols + 1);
  if (!e.pivots.empty() && e.pivots.back() == ncols) return std::nullopt;
  if (e.pivots.size() != ncols) return std::nullopt;
  RatVec x(ncols);
  for (std::size_t i = 0; i < ncols; ++i) x[i] = e.rows[i][ncols];
  return x;
}

/// Some solution of A x = b (free variables set to zero), or nullopt when inconsistent.
inline std::optional<RatVec> solve_any(const RatMatrix& a, const RatVec& b, std::size_t ncols) {
  RatMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  const RowEchelon e = rref(aug, ncols + 1);
  if (!e.pivots.empty() && e.pivots.back() == ncols) return std::nullopt;
  RatVec x = zeros(ncols);
  for (std::size_t i = 0; i < e.rows.size(); ++i) x[e.pivots[i]] = e.rows[i][ncols];
  return x;
}

inline RatMatrix transpose(const RatMatrix& m, std::size_t ncols) {
  RatMatrix t(ncols, RatVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j) t[j][i] = m[i][j];
  return t;
}

/// y = M x for a row-major M.
inline RatVec apply(const RatMatrix& m, const RatVec& x) {
  RatVec y(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) y[i] = dot(m[i], x);
  return y;
}

}  // namespace sphval::polycore
