#pragma once

#include <optional>
#include <vector>

#include "jbstar/algebra.hpp"
#include "jbstar/rng.hpp"
#include "jbstar/tolerances.hpp"

namespace jbstar {

/// Linear map between algebras stored as a matrix over the canonical bases.
/// When the map is only meaningful on a subalgebra, `sample_span` holds a
/// basis of that subalgebra and residual verification samples from its span
/// (the documented sample set); otherwise samples come from the whole
/// domain.
struct JordanMap {
  Algebra domain;
  Algebra codomain;
  Matrix matrix;
  std::vector<Element> sample_span;

  Element apply(const Element& x) const;

  struct Residuals {
    double multiplicativity = 0;
    double involution = 0;
    double isometry = 0;
    bool unital = false;

    bool verified(const Tolerances& tol) const {
      return multiplicativity <= tol.residual_tol && involution <= tol.residual_tol &&
             isometry <= tol.residual_tol;
    }
  };
};

JordanMap identity_map(const Algebra& a);

/// Composition g . f (apply f first).
JordanMap compose(const JordanMap& g, const JordanMap& f);

/// Residuals of the Jordan *-homomorphism laws over random samples:
/// multiplicativity max ||F(a o b) - F(a) o F(b)||, involution
/// max ||F(a*) - F(a)*|| (coordinate norms), isometry max | ||F(a)|| - ||a|| |
/// over self-adjoint samples (the algebra norm of the general cubic-model
/// element being out of scope), plus the unital flag.
JordanMap::Residuals verify_jordan_map(const JordanMap& m, int samples,
                                       const Tolerances& tol, Rng& rng);

/// Random Jordan *-automorphism generator: unitary conjugation (optionally
/// composed with the transpose automorphism) on matrix blocks, a random
/// rotation of the unit's orthocomplement on spin blocks, and a random
/// permutation of identical summands on direct sums. The codomain equals the
/// domain up to summand order.
JordanMap random_jordan_iso(const Algebra& a, Rng& rng);

}  // namespace jbstar
