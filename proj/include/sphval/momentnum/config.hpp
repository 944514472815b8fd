#pragma once

#include <cstddef>

#include "sphval/error.hpp"

namespace sphval::momentnum {

struct NumericConfig {
  double residual_tol = 1e-9;
  std::size_t max_newton_iters = 50;
  double divergence_norm = 1e6;
  double rank_tol = 1e-8;
  std::size_t max_flow_iters = 20000;  // gradient flow for non-abelian groups
  bool exact_hull_check = true;        // decide hull membership exactly before iterating

  void validate() const {
    if (!(residual_tol > 0) || max_newton_iters == 0 || !(divergence_norm > 0) || !(rank_tol > 0) ||
        max_flow_iters == 0)
      fail(ErrorKind::InvalidArgument, "numeric configuration values must be positive");
  }
};

}  // namespace sphval::momentnum
