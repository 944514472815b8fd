#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "sphval/momentnum/config.hpp"
#include "sphval/polycore/polytope.hpp"

namespace sphval::momentnum {

using polycore::RatMatrix;
using polycore::RatVec;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Integer weights with positive amplitudes; duplicate weights are merged.
class WeightedVector {
 public:
  WeightedVector(const RatMatrix& weights, const std::vector<double>& amplitudes) {
    if (weights.empty()) fail(ErrorKind::InvalidArgument, "weighted vector needs at least one weight");
    if (weights.size() != amplitudes.size()) fail(ErrorKind::InvalidArgument, "weights and amplitudes differ in length");
    dim_ = weights.front().size();
    std::map<RatVec, double> merged;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i].size() != dim_) fail(ErrorKind::InvalidArgument, "weights of different lengths");
      if (!polycore::is_integral(weights[i])) fail(ErrorKind::InvalidArgument, "weights must be integral");
      if (!(amplitudes[i] > 0) || !std::isfinite(amplitudes[i]))
        fail(ErrorKind::InvalidArgument, "amplitudes must be positive and finite");
      merged[weights[i]] += amplitudes[i];
    }
    for (const auto& [w, c] : merged) {
      weights_.push_back(w);
      amplitudes_.push_back(c);
    }
    lambda_ = MatrixXd(weights_.size(), dim_);
    for (std::size_t i = 0; i < weights_.size(); ++i)
      for (std::size_t k = 0; k < dim_; ++k) lambda_(i, k) = weights_[i][k].get_d();
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  const RatMatrix& weights() const { return weights_; }
  const std::vector<double>& amplitudes() const { return amplitudes_; }
  const MatrixXd& weight_matrix() const { return lambda_; }  // one weight per row

 private:
  std::size_t dim_ = 0;
  RatMatrix weights_;
  std::vector<double> amplitudes_;
  MatrixXd lambda_;
};

/// Normalized Gibbs weights p_i proportional to c_i exp(2 lambda_i(xi)), max-shifted.
inline VectorXd gibbs_weights(const WeightedVector& w, const VectorXd& xi) {
  VectorXd s = 2.0 * (w.weight_matrix() * xi);
  for (std::size_t i = 0; i < w.size(); ++i) s[i] += std::log(w.amplitudes()[i]);
  const double mx = s.maxCoeff();
  VectorXd p = (s.array() - mx).exp();
  return p / p.sum();
}

/// The potential 1/2 log sum c_i exp(2 lambda_i(xi)).
inline double toric_potential(const WeightedVector& w, const VectorXd& xi) {
  VectorXd s = 2.0 * (w.weight_matrix() * xi);
  for (std::size_t i = 0; i < w.size(); ++i) s[i] += std::log(w.amplitudes()[i]);
  const double mx = s.maxCoeff();
  return 0.5 * (mx + std::log((s.array() - mx).exp().sum()));
}

inline VectorXd toric_moment(const WeightedVector& w, const VectorXd& xi) {
  if (static_cast<std::size_t>(xi.size()) != w.dim()) fail(ErrorKind::InvalidArgument, "toric_moment: wrong length");
  return w.weight_matrix().transpose() * gibbs_weights(w, xi);
}

/// Hessian of the potential: twice the weight covariance under the Gibbs weights.
inline MatrixXd toric_hessian(const WeightedVector& w, const VectorXd& xi) {
  const VectorXd p = gibbs_weights(w, xi);
  const VectorXd m = w.weight_matrix().transpose() * p;
  const MatrixXd centered = w.weight_matrix().rowwise() - m.transpose();
  return 2.0 * centered.transpose() * p.asDiagonal() * centered;
}

/// Orthonormal basis (columns) of the span of weight differences.
inline MatrixXd difference_basis(const MatrixXd& lambda, double rank_tol) {
  const Eigen::Index d = lambda.cols();
  if (lambda.rows() < 2) return MatrixXd(d, 0);
  const MatrixXd diffs = (lambda.bottomRows(lambda.rows() - 1).rowwise() - lambda.row(0)).transpose();
  Eigen::JacobiSVD<MatrixXd> svd(diffs, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  Eigen::Index r = 0;
  while (r < sv.size() && sv[r] > rank_tol * std::max(1.0, sv[0])) ++r;
  return svd.matrixU().leftCols(r);
}

struct InversionResult {
  VectorXd xi;
  std::size_t iterations = 0;
  double residual = 0;
};

namespace detail {

/// Exact position of mu relative to the weight hull: throws RankDeficient or BoundaryPoint.
inline void check_hull(const WeightedVector& w, const VectorXd& mu) {
  RatVec q;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (!std::isfinite(mu[i])) fail(ErrorKind::InvalidArgument, "non-finite target");
    q.push_back(polycore::from_double(mu[i]));
  }
  const auto hull = polycore::Polytope::from_vertices(w.weights(), w.dim());
  // equation pairs are tight on every vertex; anything else tight at mu is a proper face
  const auto& verts = hull.vertices();
  for (std::size_t i = 0; i < hull.halfspaces().size(); ++i) {
    const bool implicit =
        std::all_of(verts.begin(), verts.end(), [&](const RatVec& v) { return hull.is_tight(i, v); });
    if (implicit && !hull.is_tight(i, q)) fail(ErrorKind::RankDeficient, "target leaves the affine hull of the weights");
  }
  for (std::size_t i = 0; i < hull.halfspaces().size(); ++i) {
    const bool implicit =
        std::all_of(verts.begin(), verts.end(), [&](const RatVec& v) { return hull.is_tight(i, v); });
    if (!implicit && polycore::dot(hull.halfspaces()[i].normal, q) <= hull.halfspaces()[i].offset)
      fail(ErrorKind::BoundaryPoint, "target is not in the relative interior of the weight hull");
  }
}

}  // namespace detail

/// Solves toric_moment(xi) = mu by damped Newton on the convex potential
/// F(xi) = 1/2 log sum c_i exp(2 lambda_i(xi)) - mu(xi), restricted to the
/// span of weight differences.
inline InversionResult invert_toric_moment(const WeightedVector& w, const VectorXd& mu, const NumericConfig& cfg = {}) {
  cfg.validate();
  if (static_cast<std::size_t>(mu.size()) != w.dim()) fail(ErrorKind::InvalidArgument, "target has the wrong length");
  if (cfg.exact_hull_check) detail::check_hull(w, mu);
  const MatrixXd basis = difference_basis(w.weight_matrix(), cfg.rank_tol);
  const VectorXd lambda0 = w.weight_matrix().row(0).transpose();
  const VectorXd off = (mu - lambda0) - basis * (basis.transpose() * (mu - lambda0));
  if (off.norm() > cfg.rank_tol) fail(ErrorKind::RankDeficient, "target leaves the affine hull of the weights");

  const Eigen::Index r = basis.cols();
  VectorXd eta = VectorXd::Zero(r);
  auto objective = [&](const VectorXd& e) {
    const VectorXd xi = basis * e;
    return toric_potential(w, xi) - mu.dot(xi);
  };
  InversionResult out;
  for (std::size_t it = 0;; ++it) {
    const VectorXd xi = basis * eta;
    const VectorXd grad = basis.transpose() * (toric_moment(w, xi) - mu);
    out.xi = xi;
    out.iterations = it;
    out.residual = (toric_moment(w, xi) - mu).norm();
    if (out.residual <= cfg.residual_tol) return out;
    if (xi.norm() > cfg.divergence_norm) fail(ErrorKind::BoundaryPoint, "Newton iterates diverge");
    if (it == cfg.max_newton_iters)
      fail(ErrorKind::NotConverged, "no convergence after " + std::to_string(it) + " Newton steps, residual " +
                                        std::to_string(out.residual));
    const MatrixXd hess = basis.transpose() * toric_hessian(w, xi) * basis;
    const VectorXd step = -hess.ldlt().solve(grad);
    const double f0 = objective(eta);
    const double slope = grad.dot(step);
    double t = 1.0;
    // a small Newton decrement means the quadratic model is trusted; below it the
    // objective change drowns in rounding and Armijo is meaningless
    if (-slope > 1e-8)
      while (t > 1e-12 && objective(eta + t * step) > f0 + 1e-4 * t * slope) t *= 0.5;
    if (t <= 1e-12) {
      // objective flat to rounding: accept the Newton step if the residual drops
      const VectorXd trial = eta + step;
      if ((toric_moment(w, basis * trial) - mu).norm() >= out.residual)
        fail(ErrorKind::NotConverged, "line search stalled at residual " + std::to_string(out.residual));
      t = 1.0;
    }
    eta += t * step;
  }
}

}  // namespace sphval::momentnum
