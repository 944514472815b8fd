#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sphval/momentnum/toric.hpp"
#include "sphval/rootsys/rootsys.hpp"

namespace sphval::momentnum {

using cd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

/// Orthonormal basis of traceless Hermitian n x n matrices, tr(Y_a Y_b) = delta_ab.
inline std::vector<MatrixXcd> su_basis(std::size_t n) {
  std::vector<MatrixXcd> out;
  const double r = 1.0 / std::sqrt(2.0);
  const auto N = static_cast<Eigen::Index>(n);
  for (Eigen::Index j = 0; j < N; ++j)
    for (Eigen::Index k = j + 1; k < N; ++k) {
      MatrixXcd s = MatrixXcd::Zero(N, N), a = MatrixXcd::Zero(N, N);
      s(j, k) = s(k, j) = r;
      a(j, k) = cd(0, -r);
      a(k, j) = cd(0, r);
      out.push_back(s);
      out.push_back(a);
    }
  for (Eigen::Index l = 1; l < N; ++l) {
    MatrixXcd h = MatrixXcd::Zero(N, N);
    const double c = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (Eigen::Index i = 0; i < l; ++i) h(i, i) = c;
    h(l, l) = -static_cast<double>(l) * c;
    out.push_back(h);
  }
  return out;
}

/// Factor of the acting compact group; determines how the moment value is read off.
struct Block {
  enum class Kind { Circle, SU2, SUn } kind;
  std::size_t n = 1;       // matrix size for SU blocks
  std::size_t offset = 0;  // first basis index
  std::size_t count() const { return kind == Kind::Circle ? 1 : n * n - 1; }
};

/// Unitary representation of a compact group, given by anti-Hermitian images
/// rho(X_a) of a basis X_a = i Y_a of its Lie algebra.
class CompactRepresentation {
 public:
  CompactRepresentation(std::size_t dim, std::vector<MatrixXcd> action, std::vector<Block> blocks)
      : dim_(dim), action_(std::move(action)), blocks_(std::move(blocks)) {
    std::size_t total = 0;
    for (const auto& b : blocks_) total += b.count();
    if (total != action_.size()) fail(ErrorKind::InvalidArgument, "blocks do not match the basis size");
    for (const auto& a : action_) {
      if (a.rows() != static_cast<Eigen::Index>(dim_) || a.cols() != static_cast<Eigen::Index>(dim_))
        fail(ErrorKind::InvalidArgument, "action matrix of wrong size");
      if ((a + a.adjoint()).norm() > 1e-8 * std::max(1.0, a.norm()))
        fail(ErrorKind::InvalidArgument, "action matrices must be anti-Hermitian");
    }
  }

  std::size_t dim() const { return dim_; }
  std::size_t basis_size() const { return action_.size(); }
  const std::vector<MatrixXcd>& action() const { return action_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  bool is_torus() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.kind == Block::Kind::Circle; });
  }

  /// rho(exp(sum t_a X_a)): a unitary matrix.
  MatrixXcd compact_element(const Eigen::VectorXd& t) const { return exp_anti_hermitian(combine(t)); }

  /// rho(exp(sum s_a Y_a)): a positive Hermitian matrix in the complexified group.
  MatrixXcd noncompact_element(const Eigen::VectorXd& s) const {
    const MatrixXcd h = cd(0, -1) * combine(s);  // Hermitian
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
    return es.eigenvectors() * es.eigenvalues().array().exp().matrix().cast<cd>().asDiagonal() *
           es.eigenvectors().adjoint();
  }

  MatrixXcd random_compact_element(std::mt19937_64& rng, double scale = 3.0) const {
    std::normal_distribution<double> g(0.0, scale);
    Eigen::VectorXd t(action_.size());
    for (auto& x : t) x = g(rng);
    return compact_element(t);
  }

 private:
  MatrixXcd combine(const Eigen::VectorXd& t) const {
    if (static_cast<std::size_t>(t.size()) != action_.size()) fail(ErrorKind::InvalidArgument, "wrong parameter count");
    MatrixXcd a = MatrixXcd::Zero(dim_, dim_);
    for (std::size_t i = 0; i < action_.size(); ++i) a += t[i] * action_[i];
    return a;
  }

  static MatrixXcd exp_anti_hermitian(const MatrixXcd& a) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(cd(0, -1) * a);
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) phases[i] = std::polar(1.0, es.eigenvalues()[i]);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  }

  std::size_t dim_;
  std::vector<MatrixXcd> action_;
  std::vector<Block> blocks_;
};

/// Diagonal torus action with the given integer weights (one weight per basis vector).
inline CompactRepresentation torus_representation(const RatMatrix& weights) {
  if (weights.empty()) fail(ErrorKind::InvalidArgument, "torus representation needs weights");
  const std::size_t r = weights.front().size();
  const auto n = static_cast<Eigen::Index>(weights.size());
  std::vector<MatrixXcd> action;
  std::vector<Block> blocks;
  for (std::size_t a = 0; a < r; ++a) {
    MatrixXcd x = MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) x(i, i) = cd(0, weights[static_cast<std::size_t>(i)][a].get_d());
    action.push_back(x);
    blocks.push_back({Block::Kind::Circle, 1, a});
  }
  return {weights.size(), action, blocks};
}

/// SU(2) on Sym^d C^2 in the weight basis d, d-2, ..., -d.
inline CompactRepresentation su2_symmetric_power(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d + 1);
  const double j = d / 2.0;
  MatrixXcd jz = MatrixXcd::Zero(n, n), jp = MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double m = j - static_cast<double>(k);
    jz(k, k) = m;
    if (k > 0) jp(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  const MatrixXcd jm = jp.adjoint();
  const MatrixXcd jx = 0.5 * (jp + jm);
  const MatrixXcd jy = cd(0, -0.5) * (jp - jm);
  // su_basis(2) is sigma_x, sigma_y, sigma_z over sqrt 2, acting as sqrt 2 times J
  const double s = std::sqrt(2.0);
  std::vector<MatrixXcd> action{cd(0, s) * jx, cd(0, s) * jy, cd(0, s) * jz};
  return {d + 1, action, {{Block::Kind::SU2, 2, 0}}};
}

/// SU(n) on C^n.
inline CompactRepresentation sun_defining(std::size_t n) {
  std::vector<MatrixXcd> action;
  for (const auto& y : su_basis(n)) action.push_back(cd(0, 1) * y);
  return {n, action, {{n == 2 ? Block::Kind::SU2 : Block::Kind::SUn, n, 0}}};
}

/// Components (1/i)(v|X_a v)/(v|v) along the basis.
inline Eigen::VectorXd moment_map(const CompactRepresentation& rep, const VectorXcd& v) {
  if (static_cast<std::size_t>(v.size()) != rep.dim()) fail(ErrorKind::InvalidArgument, "vector of wrong size");
  const double nn = v.squaredNorm();
  if (!(nn > 0)) fail(ErrorKind::ZeroVector, "moment map of the zero vector");
  Eigen::VectorXd out(rep.basis_size());
  for (std::size_t a = 0; a < rep.basis_size(); ++a) {
    const cd val = v.dot(rep.action()[a] * v) / cd(0, 1) / nn;
    if (std::abs(val.imag()) > 1e-12 * std::max(1.0, rep.action()[a].norm()))
      fail(ErrorKind::InvalidArgument, "moment map has an imaginary residue");
    out[static_cast<Eigen::Index>(a)] = val.real();
  }
  return out;
}

/// Root system matching the block structure, when it is homogeneous.
inline rootsys::RootSystem representation_root_system(const CompactRepresentation& rep) {
  const auto& bl = rep.blocks();
  if (rep.is_torus()) return rootsys::RootSystem::torus(bl.size());
  if (std::all_of(bl.begin(), bl.end(), [](const Block& b) { return b.kind == Block::Kind::SU2; }))
    return rootsys::RootSystem::a1_product(bl.size());
  if (bl.size() == 1 && bl[0].kind == Block::Kind::SUn) return rootsys::RootSystem::type_a(bl[0].n);
  fail(ErrorKind::InvalidArgument, "mixed block structure has no single root system");
}

/// Kirwan map in +Pol coordinates: the chamber point of the moment value, negated once.
/// Circle blocks contribute their value, SU(2) blocks the A1 coordinate h1 - h2, SU(n)
/// blocks the eigenvalues of sum_a Phi_a Y_a.
inline Eigen::VectorXd kirwan(const CompactRepresentation& rep, const VectorXcd& v) {
  const Eigen::VectorXd phi = moment_map(rep, v);
  std::vector<double> out;
  for (const auto& b : rep.blocks()) {
    if (b.kind == Block::Kind::Circle) {
      out.push_back(-phi[static_cast<Eigen::Index>(b.offset)]);
      continue;
    }
    const auto basis = su_basis(b.n);
    MatrixXcd h = MatrixXcd::Zero(b.n, b.n);
    for (std::size_t a = 0; a < basis.size(); ++a) h += phi[static_cast<Eigen::Index>(b.offset + a)] * basis[a];
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
    const Eigen::VectorXd ev = es.eigenvalues();  // ascending
    if (b.kind == Block::Kind::SU2) {
      const auto proj = rootsys::dominance_project(rootsys::RootSystem::a1_product(1), std::vector<double>{ev[1] - ev[0]});
      out.push_back(-proj.coordinates[0]);
    } else {
      std::vector<double> x(ev.data(), ev.data() + ev.size());
      const auto proj = rootsys::dominance_project(rootsys::RootSystem::type_a(b.n), x);
      for (double c : proj.coordinates) out.push_back(-c);
    }
  }
  return Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

}  // namespace sphval::momentnum
