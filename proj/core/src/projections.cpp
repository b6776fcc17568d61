#include "jbstar/projections.hpp"

#include <Eigen/QR>

#include "jbstar/sampling.hpp"

namespace jbstar {

bool is_projection(const Element& a, const Tolerances& tol) {
  if ((jordan_product(a, a) - a).coord_norm() > tol.residual_tol) return false;
  return (involution(a) - a).coord_norm() <= tol.residual_tol;
}

void require_projection(const Element& a, const Tolerances& tol, const char* op) {
  if (!is_projection(a, tol))
    throw NotProjection(std::string(op) + " requires a projection argument");
}

LatticePair lattice(const Element& p, const Element& q, const Tolerances& tol) {
  require_projection(p, tol, "lattice");
  require_projection(q, tol, "lattice");
  Element one = Element::unit(p.algebra());
  Element join = range_projection(p + q, tol);
  Element meet = one - range_projection((one - p) + (one - q), tol);
  return {join, meet};
}

bool is_orthogonal(const Element& p, const Element& q, const Tolerances& tol) {
  require_projection(p, tol, "is_orthogonal");
  require_projection(q, tol, "is_orthogonal");
  return jordan_product(p, q).coord_norm() <= tol.residual_tol;
}

PeirceParts peirce_decompose(const Element& a, const Element& p, const Tolerances& tol) {
  require_projection(p, tol, "peirce_decompose");
  Element one = Element::unit(p.algebra());
  Element part2 = u_operator(p, a);
  Element part0 = u_operator(one - p, a);
  return {part2, a - part2 - part0, part0};
}

ProjectionPair corner_projections(const Element& p, const Element& q,
                                  const Tolerances& tol) {
  require_projection(p, tol, "corner_projections");
  require_projection(q, tol, "corner_projections");
  Element one = Element::unit(p.algebra());
  Element pc = one - p, qc = one - q;
  Element p_and_q = lattice(p, q, tol).meet;
  Element p_and_qc = lattice(p, qc, tol).meet;
  Element pc_and_q = lattice(pc, q, tol).meet;
  Element pc_and_qc = lattice(pc, qc, tol).meet;
  Element p0 = p - p_and_q - p_and_qc;
  Element q0 = q - p_and_q - pc_and_q;
  return {p, q, p_and_q, p_and_qc, pc_and_q, pc_and_qc, p0, q0};
}

namespace {

/// Projection obtained by thresholding the spectrum of p + eps * c at 1/2: a
/// small rotation of p whenever c fails to commute with it. Retries over c
/// and eps until it lands strictly between p and distance 1.
std::optional<std::pair<Element, double>> perturbed_projection(
    const Element& p, const std::function<Element(Rng&)>& direction, Rng& rng,
    const Tolerances& tol, int tries) {
  for (int k = 0; k < tries; ++k) {
    double eps = 0.05 + 0.1 * rng.uniform();
    Element x = p + eps * direction(rng);
    SpectralData sd = j_spectrum(x, tol);
    // Spectrum must stay clear of the threshold.
    bool clear = true;
    for (double v : sd.eigenvalues)
      if (std::abs(v - 0.5) < 0.2) clear = false;
    if (!clear) continue;
    Element q = Element::zero(p.algebra());
    for (std::size_t i = 0; i < sd.values.size(); ++i)
      if (sd.values[i] > 0.5) q = q + sd.projections[i];
    if (!is_projection(q, tol)) continue;
    if ((q - p).coord_norm() <= tol.eq_tol) continue;
    double dist = op_distance(q, p, tol);
    if (dist < 1.0 - 10 * tol.eq_tol && dist > tol.eq_tol) return {{q, dist}};
  }
  return std::nullopt;
}

}  // namespace

CentralityReport is_central(const Element& p, const Tolerances& tol, Rng& rng,
                            int samples) {
  require_projection(p, tol, "is_central");
  const Algebra& alg = p.algebra();
  bool central = true;
  for (int i = 0; i < alg.dim() && central; ++i)
    central = operator_commute(p, Element::basis(alg, i), tol);

  CentralityReport report{central, std::nullopt, 0.0, 0};
  if (central) {
    // Sampled norm-isolation evidence: every other projection sits at
    // distance one.
    for (int k = 0; k < samples; ++k) {
      Rng sub = rng.substream(k);
      Element q = random_projection(alg, sub, tol, {true, true});
      if ((q - p).coord_norm() <= tol.eq_tol) continue;
      if (op_distance(p, q, tol) < 1.0 - tol.eq_tol)
        throw VerificationFailure("central projection with a nearby projection",
                                  op_distance(p, q, tol));
      ++report.isolation_samples_checked;
    }
  } else {
    auto witness = perturbed_projection(
        p, [&](Rng& r) { return random_self_adjoint(p.algebra(), r); }, rng, tol, 256);
    if (!witness)
      throw VerificationFailure("failed to construct a nearby projection witness", 0.0);
    report.witness = witness->first;
    report.witness_distance = witness->second;
  }
  return report;
}

std::vector<Element> corner_basis(const Element& p, const Tolerances& tol) {
  const Algebra& alg = p.algebra();
  Matrix compressed(alg.dim(), alg.dim());
  for (int i = 0; i < alg.dim(); ++i)
    compressed.col(i) = u_operator(p, Element::basis(alg, i)).coords();
  Eigen::ColPivHouseholderQR<Matrix> qr(compressed);
  qr.setThreshold(1e-10);
  int rank = static_cast<int>(qr.rank());
  Matrix Q = qr.householderQ();
  std::vector<Element> basis;
  basis.reserve(rank);
  for (int i = 0; i < rank; ++i) basis.emplace_back(alg, Vector(Q.col(i)));
  (void)tol;
  return basis;
}

AbelianReport is_abelian(const Element& p, const Tolerances& tol, Rng& rng, int samples) {
  require_projection(p, tol, "is_abelian");
  std::vector<Element> basis = corner_basis(p, tol);

  bool abelian = true;
  for (std::size_t i = 0; i < basis.size() && abelian; ++i)
    for (std::size_t j = i + 1; j < basis.size() && abelian; ++j)
      for (const auto& c : basis) {
        Element lhs = jordan_product(jordan_product(basis[i], c), basis[j]);
        Element rhs = jordan_product(basis[i], jordan_product(c, basis[j]));
        if ((lhs - rhs).coord_norm() > tol.residual_tol) { abelian = false; break; }
      }

  AbelianReport report{abelian, std::nullopt, 0.0, 0};
  if (p.coord_norm() <= tol.eq_tol) return report;  // p = 0: trivially abelian

  if (abelian) {
    for (int k = 0; k < samples; ++k) {
      Rng sub = rng.substream(k);
      Element r = random_subprojection(p, sub, tol, true, true);
      Element q = random_subprojection(p, sub, tol, true, true);
      double d = op_distance(r, q, tol);
      if (std::min(d, std::abs(d - 1.0)) > tol.eq_tol)
        throw VerificationFailure("abelian corner with interior projection distance", d);
      ++report.distance_samples_checked;
    }
  } else {
    // Witness pair: a subprojection of p and a small in-corner rotation of it.
    for (int k = 0; k < 128; ++k) {
      Rng sub = rng.substream(k);
      Element r = random_subprojection(p, sub, tol, false, false);
      auto q = perturbed_projection(
          r, [&](Rng& rr) { return u_operator(p, random_self_adjoint(p.algebra(), rr)); },
          sub, tol, 32);
      if (!q) continue;
      report.witness = {r, q->first};
      report.witness_distance = q->second;
      return report;
    }
    throw VerificationFailure("failed to construct the non-abelian witness pair", 0.0);
  }
  return report;
}

}  // namespace jbstar
