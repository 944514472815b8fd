#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sphval/polycore/linalg.hpp"

namespace sphval::polycore {

using IntMatrix = std::vector<std::vector<Integer>>;

inline IntMatrix to_int_matrix(const RatMatrix& m) {
  IntMatrix out;
  for (const auto& row : m) {
    if (!is_integral(row)) fail(ErrorKind::InvalidArgument, "expected integer vector, got " + format_vec(row));
    std::vector<Integer> r;
    for (const auto& x : row) r.push_back(x.get_num());
    out.push_back(std::move(r));
  }
  return out;
}

/// Nonzero invariant factors d_1 | d_2 | ... of an integer matrix (Smith normal form diagonal).
inline std::vector<Integer> smith_invariants(IntMatrix a) {
  std::vector<Integer> diag;
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  std::size_t t = 0;
  while (t < m && t < n) {
    // pivot = smallest nonzero |entry| in the trailing block
    std::size_t pr = m, pc = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a[i][j] != 0 && (pr == m || abs(a[i][j]) < abs(a[pr][pc]))) pr = i, pc = j;
    if (pr == m) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        Integer q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        Integer q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (clean) {
        // enforce divisibility of the trailing block by the pivot
        for (std::size_t i = t + 1; i < m && clean; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (a[i][j] % a[t][t] != 0) {
              for (std::size_t k = t; k < n; ++k) a[t][k] += a[i][k];
              clean = false;
              break;
            }
      }
    }
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  return diag;
}

/// Index of the sublattice spanned by independent integer vectors inside its saturation.
inline Integer saturation_index(const RatMatrix& vectors) {
  Integer idx = 1;
  for (const auto& d : smith_invariants(to_int_matrix(vectors))) idx *= d;
  return idx;
}

/// Extends independent integer vectors to a basis of Z^n; the inputs come first, unchanged.
/// Throws NotExtendable when the vectors span a non-saturated sublattice.
inline RatMatrix complete_to_lattice_basis(const RatMatrix& vectors, std::size_t n) {
  for (const auto& v : vectors)
    if (v.size() != n) fail(ErrorKind::InvalidArgument, "complete_to_lattice_basis: wrong length");
  const std::size_t k = vectors.size();
  if (k > n || rank(vectors, n) != k)
    fail(ErrorKind::InvalidArgument, "complete_to_lattice_basis: vectors are not linearly independent");
  const auto invariants = smith_invariants(to_int_matrix(vectors));
  for (const auto& d : invariants)
    if (d != 1) {
      fail(ErrorKind::NotExtendable,
           "span has index " + saturation_index(vectors).get_str() + " in its saturation (invariant factor " +
               d.get_str() + ")");
    }

  // Column-reduce M to [L | 0] with a unimodular U, then complete with the tail rows of U^{-1}.
  IntMatrix a = to_int_matrix(vectors);
  IntMatrix u(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  auto col_swap = [&](std::size_t c1, std::size_t c2) {
    for (auto& row : a) std::swap(row[c1], row[c2]);
    for (auto& row : u) std::swap(row[c1], row[c2]);
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {  // col dst -= q col src
    for (auto& row : a) row[dst] -= q * row[src];
    for (auto& row : u) row[dst] -= q * row[src];
  };
  for (std::size_t i = 0; i < k; ++i) {
    for (;;) {
      std::size_t piv = n;
      for (std::size_t j = i; j < n; ++j)
        if (a[i][j] != 0 && (piv == n || abs(a[i][j]) < abs(a[i][piv]))) piv = j;
      if (piv != i) col_swap(i, piv);
      bool done = true;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (a[i][j] == 0) continue;
        Integer q = a[i][j] / a[i][i];
        col_axpy(j, i, q);
        if (a[i][j] != 0) done = false;
      }
      if (done) break;
    }
  }
  RatMatrix ur(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ur[i][j] = Rational(u[i][j]);
  // invert U exactly by solving against the identity
  RatMatrix aug = ur;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n, Rational(0));
    aug[i][n + i] = 1;
  }
  const RowEchelon e = rref(aug, 2 * n);
  RatMatrix basis = vectors;
  for (std::size_t r = k; r < n; ++r) basis.emplace_back(e.rows[r].begin() + static_cast<std::ptrdiff_t>(n), e.rows[r].end());
  return basis;
}

}  // namespace sphval::polycore
