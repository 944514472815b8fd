#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "sphval/error.hpp"

namespace sphval::momentnum {

struct CartanDecomposition {
  Eigen::MatrixXcd k1;
  Eigen::VectorXd a;    // positive diagonal, ascending
  Eigen::MatrixXcd k2;
  Eigen::VectorXd val;  // log a: a point of the negative chamber
  double residual = 0;  // ||k1 diag(a) k2 - h||
};

/// h = k1 exp(val) k2 with k1, k2 in SU(n) and val ascending. Throws NotUnimodular.
inline CartanDecomposition cartan_decompose(const Eigen::MatrixXcd& h) {
  using cd = std::complex<double>;
  const Eigen::Index n = h.rows();
  if (n == 0 || h.cols() != n) fail(ErrorKind::InvalidArgument, "cartan_decompose needs a square matrix");
  if (std::abs(h.determinant() - cd(1, 0)) > 1e-10) fail(ErrorKind::NotUnimodular, "determinant differs from 1");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // reverse to ascending singular values
  const Eigen::MatrixXcd u = svd.matrixU().rowwise().reverse();
  const Eigen::MatrixXcd vh = svd.matrixV().adjoint().colwise().reverse();
  CartanDecomposition out;
  out.a = svd.singularValues().reverse();
  const cd phase = u.determinant() / std::abs(u.determinant());
  out.k1 = u;
  out.k1.col(0) /= phase;
  out.k2 = vh;
  out.k2.row(0) *= phase;
  out.val = out.a.array().log();
  out.residual = (out.k1 * out.a.cast<cd>().asDiagonal() * out.k2 - h).norm();
  return out;
}

/// Factorwise decomposition of a product group element.
inline std::vector<CartanDecomposition> cartan_decompose(const std::vector<Eigen::MatrixXcd>& factors) {
  std::vector<CartanDecomposition> out;
  for (const auto& f : factors) out.push_back(cartan_decompose(f));
  return out;
}

}  // namespace sphval::momentnum
