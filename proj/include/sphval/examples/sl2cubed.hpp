#pragma once

#include <array>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "sphval/error.hpp"

namespace sphval::examples {

using Eigen::Matrix2cd;
using Eigen::Vector3d;
using SumZeroTriple = std::array<Matrix2cd, 3>;

/// su(2) -> R^3 with tr(xi^2) = |x|^2, via Pauli matrices scaled by 1/sqrt(2).
inline Vector3d pauli_coordinates(const Matrix2cd& xi) {
  const double s = std::sqrt(2.0);
  return {xi(0, 1).real() * s, -xi(0, 1).imag() * s, xi(0, 0).real() * s};
}

inline Matrix2cd from_pauli_coordinates(const Vector3d& x) {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix2cd m;
  m << std::complex<double>(x[2] * s, 0), std::complex<double>(x[0] * s, -x[1] * s),
      std::complex<double>(x[0] * s, x[1] * s), std::complex<double>(-x[2] * s, 0);
  return m;
}

struct OrbitSample {
  std::array<double, 3> lengths{};    // |xi_i|
  std::size_t gram_rank = 0;
  std::size_t stabilizer_dim = 0;     // dimension of the SO(3) stabilizer
  std::size_t lie_nullity = 0;        // common kernel of ad(xi_i), should equal stabilizer_dim
  std::vector<std::size_t> tight;     // k with |xi_k| = |xi_i| + |xi_j|
  std::string stratum_class;          // interior, boundary, vertex
  std::size_t face_dimension = 3;     // dimension of the face of the length cone
};

namespace detail {

inline std::size_t numerical_rank(const Eigen::MatrixXd& m, double rel_tol, double scale) {
  if (scale <= 1e-300) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > rel_tol * scale) ++r;
  return r;
}

inline Eigen::Matrix3d cross_matrix(const Vector3d& x) {
  Eigen::Matrix3d m;
  m << 0, -x[2], x[1], x[2], 0, -x[0], -x[1], x[0], 0;
  return m;
}

}  // namespace detail

/// Classifies the SO(3)-orbit of a sum-zero triple in su(2)^3. The sum must vanish to
/// 1e-12 relative to the largest component. Throws SumNotZero.
inline OrbitSample sample_sl2cubed_orbit(const SumZeroTriple& xi, double rank_tol = 1e-8) {
  for (const auto& x : xi)
    if ((x - x.adjoint()).norm() > 1e-12 || std::abs(x.trace()) > 1e-12)
      fail(ErrorKind::InvalidArgument, "components must be traceless Hermitian");
  const double size = std::max({1.0, xi[0].norm(), xi[1].norm(), xi[2].norm()});
  if ((xi[0] + xi[1] + xi[2]).norm() > 1e-12 * size) fail(ErrorKind::SumNotZero, "xi1 + xi2 + xi3 is not zero");
  OrbitSample out;
  Eigen::Matrix3d vecs;
  for (int i = 0; i < 3; ++i) {
    vecs.col(i) = pauli_coordinates(xi[static_cast<std::size_t>(i)]);
    out.lengths[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, xi[static_cast<std::size_t>(i)].squaredNorm()));
  }
  const double scale = std::max({out.lengths[0], out.lengths[1], out.lengths[2]});
  const Eigen::Matrix3d gram = vecs.transpose() * vecs;
  out.gram_rank = detail::numerical_rank(gram, rank_tol, scale * scale);
  out.stabilizer_dim = out.gram_rank == 0 ? 3 : out.gram_rank == 1 ? 1 : 0;
  Eigen::MatrixXd ad(9, 3);
  for (int i = 0; i < 3; ++i) ad.block(3 * i, 0, 3, 3) = detail::cross_matrix(vecs.col(i));
  out.lie_nullity = 3 - detail::numerical_rank(ad, rank_tol, scale);
  const double sum = out.lengths[0] + out.lengths[1] + out.lengths[2];
  for (std::size_t k = 0; k < 3; ++k) {
    const double rest = sum - out.lengths[k];
    if (sum <= 1e-300 || std::abs(out.lengths[k] - rest) <= rank_tol * sum) out.tight.push_back(k);
  }
  out.face_dimension = 3 - out.tight.size();
  out.stratum_class = out.stabilizer_dim == 3 ? "vertex" : out.stabilizer_dim == 1 ? "boundary" : "interior";
  return out;
}

/// A sum-zero triple with the prescribed lengths, rotated by R. Throws InvalidArgument
/// when the lengths violate a triangle inequality.
inline SumZeroTriple realize_lengths(double l1, double l2, double l3, const Eigen::Matrix3d& rotation) {
  const double slack = 1e-12 * (l1 + l2 + l3);
  if (l1 < 0 || l2 < 0 || l3 < 0 || l1 > l2 + l3 + slack || l2 > l1 + l3 + slack || l3 > l1 + l2 + slack)
    fail(ErrorKind::InvalidArgument, "lengths violate the triangle inequality");
  Vector3d a(l1, 0, 0), b;
  if (l1 == 0 || l2 == 0) {
    b = Vector3d(l2, 0, 0);
  } else {
    const double c = std::clamp((l3 * l3 - l1 * l1 - l2 * l2) / (2 * l1 * l2), -1.0, 1.0);
    b = Vector3d(l2 * c, l2 * std::sqrt(1 - c * c), 0);
  }
  const Vector3d c3 = -(a + b);
  return {from_pauli_coordinates(rotation * a), from_pauli_coordinates(rotation * b),
          from_pauli_coordinates(rotation * c3)};
}

inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix3d m;
  for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = g(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(m);
  Eigen::Matrix3d q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

/// xi1, xi2 Gaussian, xi3 = -(xi1 + xi2).
inline SumZeroTriple random_sum_zero_triple(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const Vector3d a(g(rng), g(rng), g(rng)), b(g(rng), g(rng), g(rng));
  return {from_pauli_coordinates(a), from_pauli_coordinates(b), from_pauli_coordinates(-(a + b))};
}

}  // namespace sphval::examples
