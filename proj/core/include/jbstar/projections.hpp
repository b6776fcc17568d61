#pragma once

#include <optional>

#include "jbstar/algebra.hpp"
#include "jbstar/rng.hpp"
#include "jbstar/spectral.hpp"

namespace jbstar {

bool is_projection(const Element& a, const Tolerances& tol);

void require_projection(const Element& a, const Tolerances& tol, const char* op);

struct LatticePair {
  Element join;
  Element meet;
};

/// join = r(p + q), meet = 1 - r((1-p) + (1-q)).
LatticePair lattice(const Element& p, const Element& q, const Tolerances& tol = {});

/// p o q = 0 to residual_tol.
bool is_orthogonal(const Element& p, const Element& q, const Tolerances& tol);

struct PeirceParts {
  Element part2;  // U_p(a)
  Element part1;  // mixed part
  Element part0;  // U_{1-p}(a)
};

PeirceParts peirce_decompose(const Element& a, const Element& p, const Tolerances& tol = {});

/// The four corner meets of a projection pair and its generic parts
/// p0 = p - p^q - p^q', q0 = q - p^q - p'^q.
struct ProjectionPair {
  Element p, q;
  Element p_and_q, p_and_qc, pc_and_q, pc_and_qc;
  Element p0, q0;
};

ProjectionPair corner_projections(const Element& p, const Element& q,
                                  const Tolerances& tol = {});

struct CentralityReport {
  bool central;
  /// Non-central case: a nearby projection at distance < 1.
  std::optional<Element> witness;
  double witness_distance = 0.0;
  int isolation_samples_checked = 0;
};

/// Centrality decision: operator commutation with every canonical basis
/// element. The sampled distance cross-check (norm isolation in the
/// projection lattice) is attached as evidence; the algebraic predicate is
/// authoritative.
CentralityReport is_central(const Element& p, const Tolerances& tol, Rng& rng,
                            int samples = 50);

struct AbelianReport {
  bool abelian;
  /// Non-abelian case: subprojections r, q <= p with 0 < ||q - r|| < 1.
  std::optional<std::pair<Element, Element>> witness;
  double witness_distance = 0.0;
  int distance_samples_checked = 0;
};

/// Abelian decision: every pair of a spanning set of U_p(A) operator
/// commutes. Distance cross-check sampled over subprojection pairs.
AbelianReport is_abelian(const Element& p, const Tolerances& tol, Rng& rng,
                         int samples = 50);

/// Orthonormal (coordinate inner product) basis of U_p(A), obtained by
/// compressing the canonical basis.
std::vector<Element> corner_basis(const Element& p, const Tolerances& tol = {});

}  // namespace jbstar
