#pragma once

#include <optional>

#include "jbstar/jordan_map.hpp"
#include "jbstar/projections.hpp"

namespace jbstar {

/// Orthonormal basis (coordinate inner product) of the subalgebra generated
/// by two projections, optionally adjoining the unit: span-closure under the
/// Jordan product iterated until the dimension stabilizes.
std::vector<Element> generated_subalgebra(const Element& p, const Element& q,
                                          bool with_unit, const Tolerances& tol = {});

/// Expected dimension of the generated subalgebra from the canonical-form
/// block count: 3 * (#distinct interior spectral values) + #(non-zero corner
/// meets), where without the unit the complement corner does not count.
int generated_subalgebra_expected_dim(const Element& p, const Element& q, bool with_unit,
                                      const Tolerances& tol = {});

struct TwoProjInvariants {
  ProjectionPair pair;
  /// Distinct interior spectral values of U_p(q) in (0,1), ascending, with
  /// angle multiplicities (eigenvalue multiplicity in U_{p0}(q0), equal to
  /// half the generic corner rank).
  std::vector<double> interior;
  std::vector<int> interior_multiplicity;
  /// Non-zero corner meets in canonical order p^q, p^q', p'^q, p'^q'.
  std::vector<int> gamma;
};

TwoProjInvariants two_proj_invariants(const Element& p, const Element& q,
                                      const Tolerances& tol = {});

/// Canonical two-projection form: a verified Jordan *-isomorphism from the
/// unital subalgebra generated by {p, q, 1} onto block-diagonal symmetric
/// matrices, one 2x2 block per distinct interior spectral value t carrying
///   p -> [[1,0],[0,0]],  q -> [[t, sqrt(t(1-t))], [sqrt(t(1-t)), 1-t]],
/// followed by one diagonal slot per non-zero corner meet.
struct TwoProjRepresentation {
  TwoProjInvariants invariants;
  JordanMap iso;           // defined on the generated subalgebra's span
  Element model_p;         // image of p in the block model
  Element model_q;         // image of q
  JordanMap::Residuals residuals;
  int s2_blocks = 0;
  int corner_slots = 0;
};

TwoProjRepresentation build_representation(const Element& p, const Element& q,
                                           const Tolerances& tol, Rng& rng);

struct SubprojectionOrthogonality {
  bool orthogonal;
  /// Non-orthogonal case: subprojections r <= p, s <= q at distance < 1.
  std::optional<std::pair<Element, Element>> falsifier;
  double falsifier_distance = 0.0;
  int verified_samples = 0;
};

/// Orthogonality via subprojections: p and q are orthogonal iff every pair
/// of non-zero subprojections r <= p, s <= q sits at distance one. When they
/// are not orthogonal, either the meet is a common subprojection (distance
/// zero) or the generic part supplies a pair at distance sqrt(1 - t) < 1.
SubprojectionOrthogonality orthogonality_by_subprojections(const Element& p,
                                                           const Element& q,
                                                           const Tolerances& tol, Rng& rng,
                                                           int samples = 50);

}  // namespace jbstar
