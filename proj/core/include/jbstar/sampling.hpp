#pragma once

#include "jbstar/algebra.hpp"
#include "jbstar/rng.hpp"
#include "jbstar/tolerances.hpp"

namespace jbstar {

/// Random element with standard complex Gaussian coordinates.
Element random_element(const Algebra& alg, Rng& rng);

/// Random self-adjoint element (hermitian matrix / real-alpha + imaginary
/// tail spin vector / real cubic coordinates; blockwise for sums).
Element random_self_adjoint(const Algebra& alg, Rng& rng);

/// Random positive norm-one element. Matrix model: normalized G*G (resampled
/// when the pre-scale norm is below 0.1); spin model: alpha e1 + i w with
/// alpha = 1 - ||w||, ||w|| uniform in [0, 1/2]; cubic model and sums route
/// through a spectral shift (and sums place norm one in a random block).
Element random_positive_sphere(const Algebra& alg, Rng& rng, const Tolerances& tol = {});

struct ProjectionOptions {
  bool allow_zero = false;
  bool allow_unit = true;
};

/// Random projection. Matrix model: unitary conjugate of a diagonal
/// projection of random rank; spin model: zero/unit/minimal mix; cubic
/// model: random subset of the primitive spectral projections of a generic
/// self-adjoint element; sums: blockwise.
Element random_projection(const Algebra& alg, Rng& rng, const Tolerances& tol = {},
                          ProjectionOptions opts = {});

/// Random projection q <= p (spectral projections of U_p of a random
/// self-adjoint element). With allow_equal, q = p may be returned.
Element random_subprojection(const Element& p, Rng& rng, const Tolerances& tol = {},
                             bool allow_zero = false, bool allow_equal = true);

/// Haar-ish random unitary / orthogonal matrices (QR of a Gaussian with the
/// R-diagonal phase fixed).
Matrix random_unitary(int n, Rng& rng);
Eigen::MatrixXd random_orthogonal(int n, Rng& rng);

/// Random positive norm-one INVERTIBLE element (spectrum in (0, 1], max 1).
Element random_positive_sphere_invertible(const Algebra& alg, Rng& rng,
                                          const Tolerances& tol = {});

}  // namespace jbstar
