#pragma once

#include <optional>

#include "jbstar/projections.hpp"
#include "jbstar/rng.hpp"

namespace jbstar {

/// Pure state realized by a minimal projection p_w (U_{p_w}(x) = w(x) p_w).
/// In the matrix model the supporting unit vector is also carried.
struct PureStateWitness {
  Element minimal_projection;
  std::optional<Vector> vector;
  Complex omega_a;
  Complex omega_b;
};

/// Evaluates the pure state attached to a minimal projection on x.
Complex evaluate_state(const Element& minimal_projection, const Element& x);

/// Returns a minimal projection below r (r itself when r is minimal).
Element minimal_subprojection(const Element& r, Rng& rng, const Tolerances& tol = {});

/// Witness production for diametrical distance: for positive norm-one a, b,
/// a pure state w with {w(a), w(b)} = {0, 1} exists iff ||a - b|| = 1, iff
/// the 1-eigenspace of one element meets the kernel of the other. The matrix
/// model intersects eigenspaces via singular values; other models route
/// through the lattice meet of the spectral projections.
std::optional<PureStateWitness> diametrical_witness(const Element& a, const Element& b,
                                                    const Tolerances& tol, Rng& rng);

struct DoubleSphereReport {
  bool projection;
  /// Non-projection case: b = f(a) != a with the state-transfer certificate.
  std::optional<Element> falsifier;
  bool certificate_ok = false;
  /// Projection case: sweep bookkeeping.
  int candidates_refuted = 0;
  bool sweep_ok = false;
  double worst_refutation_distance = 0.0;
};

/// Double-sphere characterization of projections: a positive norm-one a has
/// Sph(Sph(a)) = {a} exactly when its spectrum lies in {0,1}. Non-projections
/// get a constructive falsifier b = f(a) (f continuous, f(0)=0, f(1)=1,
/// 0<=f<=1) certified by the eigenspace inclusions 0-eig(a) <= 0-eig(b) and
/// 1-eig(a) <= 1-eig(b). Projections get a refutation sweep: for each
/// constructed candidate b != a, an element c in Sph(a) with ||c - b|| < 1.
DoubleSphereReport double_sphere_test(const Element& a, const Tolerances& tol, Rng& rng,
                                      int sweep_candidates = 100);

struct OrderBySpheresReport {
  bool q_leq_p;
  /// Falsifier: invertible positive norm-one a at distance 1 from p but
  /// strictly less than 1 from q.
  std::optional<Element> falsifier;
  double falsifier_dist_p = 0.0;
  double falsifier_dist_q = 0.0;
  double falsifier_bound = 0.0;  // 1/2 or eps + ||ec|| depending on the branch
  int verified_samples = 0;
};

/// Order between projections through invertible sphere elements:
/// q <= p iff Sph(p) restricted to invertibles is contained in Sph(q).
OrderBySpheresReport order_by_spheres(const Element& q, const Element& p,
                                      const Tolerances& tol, Rng& rng, int samples = 50);

/// ||1 - a|| < 1 for positive norm-one a; agrees with spectral invertibility.
bool invertible_by_distance(const Element& a, const Tolerances& tol);

struct UnitCoverSample {
  double dist_p;
  double dist_comp;      // distance to 1 - p  (p != 1 case)
  bool covered;          // lies in Sph(p) or Sph(1-p)
  double midpoint_dist_one;  // p = 1 case: ||c - 1|| for c = (1+a)/2
  double midpoint_dist_a;    //            ||c - a||
};

struct UnitCharacterization {
  bool is_unit;
  std::vector<UnitCoverSample> cover;
  bool all_covered = true;
};

/// Unit characterization among central projections: p = 1 iff
/// Sph(a) u Sph(p) never exhausts the positive sphere. For p != 1 the cover
/// report shows each sampled a lies in Sph(p) u Sph(1-p); for p = 1 it
/// exhibits the midpoint (1+a)/2 within distance 1/2 of both.
UnitCharacterization unit_characterization(const Element& p, int samples,
                                           const Tolerances& tol, Rng& rng);

struct CornerSphereEvidence {
  bool orthogonal;
  int sampled_pairs = 0;
  double min_sampled_distance = 0.0;
  /// Non-orthogonal case: scaled corner pair at distance <= sqrt(1 - delta).
  std::optional<std::pair<Element, Element>> close_pair;
  double close_distance = 1.0;
  double delta = 0.0;
};

/// Orthogonality through corner spheres: p and q are orthogonal iff every
/// positive norm-one a = U_p(a), b = U_q(b) sit at distance one. The
/// non-orthogonal witness pair is f(U_p(q)), f(U_q(p)) with f ramping to one
/// at delta = min(t0, 4/5)/2, t0 the smallest interior spectral point.
CornerSphereEvidence orthogonality_by_corner_spheres(const Element& p, const Element& q,
                                                     const Tolerances& tol, Rng& rng,
                                                     int samples = 50);

}  // namespace jbstar
