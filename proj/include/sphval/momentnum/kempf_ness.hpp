#pragma once

#include <cmath>
#include <limits>

#include "sphval/momentnum/representation.hpp"

namespace sphval::momentnum {

struct KempfNessOutcome {
  enum class Kind { MinimumFound, Divergent } kind = Kind::Divergent;
  VectorXcd minimizer;  // last iterate; the minimum point when found
  std::size_t stabilizer_dim = 0;
  double moment_norm = 0;
  double log_norm_sq = 0;
  double parameter_norm = 0;
  std::size_t iterations = 0;
  std::string reason;
};

inline const char* to_string(KempfNessOutcome::Kind k) {
  return k == KempfNessOutcome::Kind::MinimumFound ? "MinimumFound" : "Divergent";
}

/// dim {xi : rho(xi) v = 0} by singular values of the stacked real matrix [rho(X_a) v].
inline std::size_t stabilizer_dimension(const CompactRepresentation& rep, const VectorXcd& v, double rank_tol) {
  const auto n = static_cast<Eigen::Index>(rep.dim());
  MatrixXd m(2 * n, static_cast<Eigen::Index>(rep.basis_size()));
  for (std::size_t a = 0; a < rep.basis_size(); ++a) {
    const VectorXcd col = rep.action()[a] * v;
    m.col(static_cast<Eigen::Index>(a)) << col.real(), col.imag();
  }
  if (m.cols() == 0) return 0;
  Eigen::JacobiSVD<MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > rank_tol * std::max(1.0, sv[0])) ++r;
  return rep.basis_size() - r;
}

namespace detail {

inline RatMatrix torus_weights(const CompactRepresentation& rep) {
  RatMatrix w(rep.dim(), RatVec(rep.basis_size()));
  for (std::size_t a = 0; a < rep.basis_size(); ++a) {
    const auto& x = rep.action()[a];
    for (std::size_t i = 0; i < rep.dim(); ++i) {
      const double l = x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).imag();
      if (std::abs(l - std::round(l)) > 1e-12) fail(ErrorKind::InvalidArgument, "torus weights must be integral");
      w[i][a] = static_cast<long>(std::lround(l));
    }
  }
  return w;
}

inline KempfNessOutcome finish(const CompactRepresentation& rep, KempfNessOutcome out, const NumericConfig& cfg) {
  out.moment_norm = moment_map(rep, out.minimizer).norm();
  if (out.kind == KempfNessOutcome::Kind::MinimumFound)
    out.stabilizer_dim = stabilizer_dimension(rep, out.minimizer, cfg.rank_tol);
  return out;
}

/// Newton on f(s) = log ||exp(s.Y) v||^2 for a diagonal torus action.
inline KempfNessOutcome kempf_ness_torus(const CompactRepresentation& rep, const VectorXcd& v, const NumericConfig& cfg) {
  const RatMatrix all = torus_weights(rep);
  RatMatrix support;
  std::vector<double> amp;
  for (std::size_t i = 0; i < rep.dim(); ++i)
    if (std::norm(v[static_cast<Eigen::Index>(i)]) > 0) {
      support.push_back(all[i]);
      amp.push_back(std::norm(v[static_cast<Eigen::Index>(i)]));
    }
  const WeightedVector w(support, amp);
  const MatrixXd basis = difference_basis(w.weight_matrix(), cfg.rank_tol);
  const Eigen::Index d = static_cast<Eigen::Index>(rep.basis_size());
  auto f = [&](const VectorXd& s) { return 2.0 * toric_potential(w, s); };
  auto true_moment = [&](const VectorXd& s) { return moment_map(rep, rep.noncompact_element(s) * v).norm(); };
  VectorXd s = VectorXd::Zero(d);
  KempfNessOutcome out;
  const std::size_t cap = std::max<std::size_t>(cfg.max_newton_iters, 200);
  for (std::size_t it = 0;; ++it) {
    out.iterations = it;
    const VectorXd grad = 2.0 * toric_moment(w, s);
    const MatrixXd hs = basis.transpose() * (2.0 * toric_hessian(w, s)) * basis;
    double lmin = std::numeric_limits<double>::infinity();
    if (hs.rows() > 0) lmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(hs).eigenvalues().minCoeff();
    const bool curved = lmin >= cfg.rank_tol;
    if (curved && true_moment(s) <= cfg.residual_tol) {
      out.kind = KempfNessOutcome::Kind::MinimumFound;
      break;
    }
    const VectorXd gs = basis.transpose() * grad;
    VectorXd step = -(grad - basis * gs);
    if (hs.rows() > 0) {
      if (lmin > 0 && std::isfinite(lmin)) step -= basis * hs.ldlt().solve(gs);
      else step -= basis * gs;
    }
    const double f0 = f(s);
    const double slope = grad.dot(step);
    double t = 1.0;
    while (t > 1e-14 && !(f(s + t * step) <= f0 + 1e-4 * t * slope)) t *= 0.5;
    bool decreased = t > 1e-14 && f(s + t * step) < f0;
    if (decreased)
      while (t < 1e18 && f(s + 2 * t * step) < f(s + t * step)) t *= 2;  // step growth
    if (!decreased && curved) {
      // flat to rounding at a curved point: finish with plain Newton steps
      for (int k = 0; k < 20; ++k) {
        const double before = true_moment(s);
        if (before <= cfg.residual_tol) break;
        const VectorXd g2 = basis.transpose() * (2.0 * toric_moment(w, s));
        const MatrixXd h2 = basis.transpose() * (2.0 * toric_hessian(w, s)) * basis;
        const VectorXd trial = s - basis * h2.ldlt().solve(g2);
        if (!(true_moment(trial) < before)) break;
        s = trial;
      }
    }
    if (!decreased) {
      // objective flat to machine precision without curvature: the infimum sits at infinity
      out.kind = curved ? KempfNessOutcome::Kind::MinimumFound : KempfNessOutcome::Kind::Divergent;
      out.reason = curved ? "stalled at a curved point" : "objective flat along a degenerate direction";
      break;
    }
    s += t * step;
    if (s.norm() > cfg.divergence_norm) {
      out.kind = KempfNessOutcome::Kind::Divergent;
      out.reason = "parameter norm exceeds divergence bound while the objective decreases";
      break;
    }
    if (it + 1 >= cap) {
      out.kind = KempfNessOutcome::Kind::Divergent;
      out.reason = "iteration cap reached";
      break;
    }
  }
  out.parameter_norm = s.norm();
  out.log_norm_sq = f(s);
  if (out.kind == KempfNessOutcome::Kind::MinimumFound) {
    out.minimizer = rep.noncompact_element(s) * v;
  } else {
    // rescaled so that divergent iterates stay finite
    VectorXd e(static_cast<Eigen::Index>(rep.dim()));
    for (std::size_t i = 0; i < rep.dim(); ++i) {
      double x = 0;
      for (std::size_t a = 0; a < rep.basis_size(); ++a) x += all[i][a].get_d() * s[static_cast<Eigen::Index>(a)];
      e[static_cast<Eigen::Index>(i)] = std::norm(v[static_cast<Eigen::Index>(i)]) > 0 ? x : -1e300;
    }
    const double mx = e.maxCoeff();
    out.minimizer = VectorXcd(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out.minimizer[i] = v[i] * std::exp(e[i] - mx);
  }
  return out;
}

/// Gradient flow v <- exp(-eta sum Phi_a Y_a) v with backtracking and step growth.
/// Iterates are kept at unit norm; the log-norm is accumulated separately.
inline KempfNessOutcome kempf_ness_flow(const CompactRepresentation& rep, const VectorXcd& v0, const NumericConfig& cfg) {
  VectorXcd u = v0.normalized();
  double log_norm = std::log(v0.squaredNorm());
  KempfNessOutcome out;
  double eta = 0.5;
  for (std::size_t it = 0;; ++it) {
    out.iterations = it;
    const VectorXd phi = moment_map(rep, u);
    if (phi.norm() <= cfg.residual_tol) {
      out.kind = KempfNessOutcome::Kind::MinimumFound;
      break;
    }
    // d/deta log||exp(-eta Phi.Y) u||^2 at 0 is -2 |Phi|^2
    const double slope = -2.0 * phi.squaredNorm();
    VectorXcd next;
    double drop = 0;
    for (;;) {
      next = rep.noncompact_element(-eta * phi) * u;
      const double nn = next.squaredNorm();
      drop = std::log(nn);
      const bool representable = nn > 1e-200 && std::isfinite(nn);
      if ((representable && drop <= 1e-4 * eta * slope) || eta < 1e-14) break;
      eta *= 0.5;
    }
    if (eta < 1e-14) {
      out.kind = KempfNessOutcome::Kind::Divergent;
      out.reason = "line search failed";
      break;
    }
    out.parameter_norm += eta * phi.norm();
    log_norm += drop;
    u = next.normalized();
    eta *= 2.0;
    if (out.parameter_norm > cfg.divergence_norm) {
      out.kind = KempfNessOutcome::Kind::Divergent;
      out.reason = "parameter norm exceeds divergence bound while the objective decreases";
      break;
    }
    if (it + 1 >= cfg.max_flow_iters) {
      out.kind = KempfNessOutcome::Kind::Divergent;
      out.reason = "iteration cap reached";
      break;
    }
  }
  out.log_norm_sq = log_norm;
  // divergent iterates are returned at unit norm
  out.minimizer = out.kind == KempfNessOutcome::Kind::MinimumFound ? VectorXcd(u * std::exp(log_norm / 2)) : u;
  return out;
}

}  // namespace detail

/// Minimizes log ||g v||^2 over the non-compact directions of the complexified group.
inline KempfNessOutcome kempf_ness_minimize(const CompactRepresentation& rep, const VectorXcd& v,
                                            const NumericConfig& cfg = {}) {
  cfg.validate();
  if (static_cast<std::size_t>(v.size()) != rep.dim()) fail(ErrorKind::InvalidArgument, "vector of wrong size");
  if (!(v.squaredNorm() > 0)) fail(ErrorKind::ZeroVector, "Kempf-Ness minimization of the zero vector");
  auto out = rep.is_torus() ? detail::kempf_ness_torus(rep, v, cfg) : detail::kempf_ness_flow(rep, v, cfg);
  return detail::finish(rep, std::move(out), cfg);
}

}  // namespace sphval::momentnum
