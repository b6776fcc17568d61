#pragma once

#include <functional>
#include <optional>
#include <string>

#include "jbstar/jordan_map.hpp"
#include "jbstar/projections.hpp"
#include "jbstar/spin.hpp"

namespace jbstar {

/// Map between positive unit spheres, given as a callable rule plus
/// provenance. Isometry and surjectivity cannot be read off a callable; they
/// are asserted by the producer and spot-checked by consumers. When the map
/// was synthesized from a linear isomorphism, the generator and an inverse
/// rule are carried along for round trips.
struct SphereMap {
  Algebra source;
  Algebra target;
  std::function<Element(const Element&)> rule;
  std::optional<JordanMap> generator;
  std::string perturbation;  // empty when none

  Element operator()(const Element& x) const { return rule(x); }
};

/// Restriction of a verified Jordan *-isomorphism to the positive sphere
/// (the ground-truth generator for round trips). Throws when the residual
/// verification of phi fails.
SphereMap synthesize_sphere_isometry(const JordanMap& phi, const Tolerances& tol,
                                     Rng& rng);

/// Order-preserving non-isometric perturbation: reparametrizes the interior
/// spectrum by t -> t^k before applying the base map. Fixes every projection
/// yet distorts distances, so the extension pipeline must reject it.
SphereMap perturb_interior_spectrum(const SphereMap& base, int k = 2,
                                    const Tolerances& tol = {});

/// Evidence gathered by transporting projections through a sphere map:
/// images pass the projection test (a failed image is a contradiction with
/// the isometry hypothesis and throws), order/orthogonality/centrality are
/// preserved on sampled pairs, spin summand units match spin summand units
/// of equal dimension, and dominated pairs (p <= a, a invertible) transport
/// to dominated pairs.
struct ProjectionTransferReport {
  int sampled_projections = 0;
  bool isometry_spot_check_ok = true;
  double worst_isometry_gap = 0.0;
  bool order_preserved = true;
  bool orthogonality_preserved = true;
  bool centrality_preserved = true;
  bool spin_summand_matching = true;
  bool dominated_pairs_preserved = true;
  std::vector<std::pair<Element, Element>> assignments;
};

ProjectionTransferReport extract_projection_map(const SphereMap& delta, int samples,
                                                const Tolerances& tol, Rng& rng);

/// The three computable characterizations of q <= a for a non-trivial
/// projection q and an invertible positive norm-one a:
///  (spectral)  a - q is positive,
///  (corner)    U_q(a) = q and the mixed Peirce part vanishes,
///  (distance)  ||1 - r - a|| = 1 for every non-zero r <= q, decided with
///              sampled subprojections plus the constructive candidate (the
///              spectral projection of U_q(a) at its smallest corner value).
struct OrderRouteReport {
  bool leq;
  bool route_spectral;
  bool route_corner;
  bool route_distance;
  bool agree;
  /// Distance-route witness r with ||1 - r - a|| < 1 (false case).
  std::optional<Element> witness_r;
  double witness_distance = 1.0;
};

OrderRouteReport projection_order_routes(const Element& q, const Element& a,
                                         const Tolerances& tol, Rng& rng,
                                         int samples = 50);

/// Extension of a surjective sphere isometry to a Jordan *-isomorphism for
/// finite direct sums of matrix and spin summands. Pipeline: spot-check the
/// isometry hypothesis, match summands through the images of block units,
/// reconstruct spin blocks through the projection map and matrix blocks
/// through corner-map affine fits (two independent base points), assemble,
/// and verify against the sphere map on sampled points. Any failed
/// verification throws VerificationFailure carrying the worst witness.
JordanMap extend_isometry(const SphereMap& delta, const Tolerances& tol, Rng& rng,
                          int verify_samples = 200);

}  // namespace jbstar
