#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>

#include "jbstar/jordan_map.hpp"
#include "jbstar/projections.hpp"
#include "jbstar/rng.hpp"

namespace jbstar {

/// Projection of a spin factor in parametrized form: zero, the unit, or the
/// minimal projection (e1 + i b)/2 for a real unit vector b orthogonal to
/// e1 (stored as the tail of length n-1).
struct SpinProjection {
  enum class Kind { Zero, Unit, Minimal };
  Kind kind;
  Eigen::VectorXd b;  // length n-1, unit norm (minimal case only)

  static SpinProjection zero() { return {Kind::Zero, {}}; }
  static SpinProjection unit() { return {Kind::Unit, {}}; }
  static SpinProjection minimal(Eigen::VectorXd b);
};

/// Decomposes a spin-factor projection element into the parametrized form.
SpinProjection decompose_spin_projection(const Element& p, const Tolerances& tol = {});
Element spin_projection_element(const Algebra& spin, const SpinProjection& p);

/// The bijection between minimal projections and unit vectors orthogonal to
/// the unit: (e1 + i b)/2 <-> b.
Eigen::VectorXd upsilon(const SpinProjection& p);
SpinProjection upsilon_inv(const Eigen::VectorXd& b, const Tolerances& tol = {});

/// Distance between minimal projections: ||p - q|| = ||Y(p) - Y(q)|| / 2.
double min_proj_distance(const SpinProjection& p, const SpinProjection& q);

/// Map between projection lattices of spin factors. The rule may be backed
/// by a lazily memoized assignment (the hemisphere counterexample) or by a
/// deterministic callable; memoization is single-writer (callers serialize
/// concurrent queries).
class SpinProjectionMap {
public:
  SpinProjectionMap(Algebra source, Algebra target,
                    std::function<SpinProjection(const SpinProjection&)> rule);

  const Algebra& source() const { return source_; }
  const Algebra& target() const { return target_; }
  SpinProjection map(const SpinProjection& p) const;
  Element map_element(const Element& p, const Tolerances& tol = {}) const;

  struct Evidence {
    bool order_preserving = false;
    bool diametrical_preserving = false;
    bool sqrt2_preserving = false;
    int samples = 0;
  };
  Evidence& evidence() { return evidence_; }
  const Evidence& evidence() const { return evidence_; }

private:
  Algebra source_;
  Algebra target_;
  std::function<SpinProjection(const SpinProjection&)> rule_;
  Evidence evidence_;
};

/// The hemisphere counterexample between the three- and four-dimensional
/// spin factors: minimal projections of the source are split into antipodal
/// halves by the sign of the first non-zero coordinate; each queried
/// positive representative is assigned a fresh random point of the target's
/// positive hemisphere (memoized, with stored inverse) and the assignment is
/// extended by central symmetry. By construction the map is an order
/// isomorphism preserving diametrical pairs, yet it cannot preserve the
/// sqrt(2)/2 distance (the dimensions differ).
SpinProjectionMap counterexample_theta(std::uint64_t seed);

/// Extends a surjective isometry of the unit sphere of R^d to an orthogonal
/// matrix: columns are T(e_i), verified orthogonal and pointwise on sampled
/// sphere points. Throws VerificationFailure with the worst sample when the
/// input was not a sphere isometry.
Eigen::MatrixXd sphere_isometry_extension(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& T, int d,
    const Tolerances& tol, Rng& rng, int samples = 100);

/// Builds the Jordan *-isomorphism extending an isometric order isomorphism
/// between the projection lattices of two spin factors of equal dimension:
/// conjugate by Y, extend the sphere isometry to an orthogonal map of the
/// unit's orthocomplement, pad the unit direction, and complexify.
/// Dimension mismatch is a typed error (no such isomorphism exists).
JordanMap jordan_iso_from_theta(const SpinProjectionMap& theta, const Tolerances& tol,
                                Rng& rng, int samples = 100);

}  // namespace jbstar
