#pragma once

#include "jbstar/errors.hpp"

namespace jbstar {

/// Numerical tolerances shared by all decision procedures.
///
/// eq_tol guards metric equalities (distances, norms), residual_tol guards
/// algebraic residuals (products, map verification), spectral_tol guards
/// eigenvalue classification. Spectral clustering groups eigenvalues within
/// 10 * spectral_tol.
struct Tolerances {
  double eq_tol = 1e-9;
  double residual_tol = 1e-8;
  double spectral_tol = 1e-10;

  double cluster_width() const { return 10.0 * spectral_tol; }

  void validate() const {
    if (eq_tol <= 0 || residual_tol <= 0 || spectral_tol <= 0)
      throw PreconditionError("tolerances must be strictly positive");
    if (eq_tol < spectral_tol)
      throw PreconditionError("eq_tol must be >= spectral_tol");
  }
};

}  // namespace jbstar
