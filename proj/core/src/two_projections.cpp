#include "jbstar/two_projections.hpp"

#include <Eigen/QR>
#include <cmath>

#include "jbstar/sampling.hpp"

namespace jbstar {

namespace {

// Interior clipping: spectral values this close to 0 or 1 belong to corner
// meets, not the generic part (absorbs the cubic-model root conditioning).
constexpr double kInteriorClip = 1e-7;

std::vector<Element> orthonormalize(const Algebra& alg,
                                    const std::vector<Element>& raw) {
  Matrix cols(alg.dim(), raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) cols.col(i) = raw[i].coords();
  Eigen::ColPivHouseholderQR<Matrix> qr(cols);
  qr.setThreshold(1e-9);
  int rank = static_cast<int>(qr.rank());
  Matrix Q = qr.householderQ();
  std::vector<Element> out;
  out.reserve(rank);
  for (int i = 0; i < rank; ++i) out.emplace_back(alg, Vector(Q.col(i)));
  return out;
}

}  // namespace

std::vector<Element> generated_subalgebra(const Element& p, const Element& q,
                                          bool with_unit, const Tolerances& tol) {
  require_projection(p, tol, "generated_subalgebra");
  require_projection(q, tol, "generated_subalgebra");
  require_same_algebra(p, q);
  const Algebra& alg = p.algebra();

  std::vector<Element> seeds{p, q};
  if (with_unit) seeds.push_back(Element::unit(alg));
  std::vector<Element> basis = orthonormalize(alg, seeds);

  while (true) {
    std::vector<Element> extended = basis;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i; j < basis.size(); ++j)
        extended.push_back(jordan_product(basis[i], basis[j]));
    std::vector<Element> next = orthonormalize(alg, extended);
    if (next.size() == basis.size()) return next;
    basis = std::move(next);
  }
}

TwoProjInvariants two_proj_invariants(const Element& p, const Element& q,
                                      const Tolerances& tol) {
  TwoProjInvariants inv{corner_projections(p, q, tol), {}, {}, {}};

  Element u0 = u_operator(inv.pair.p0, inv.pair.q0);
  if (u0.coord_norm() > tol.eq_tol) {
    SpectralData sd = j_spectrum(u0, tol);
    for (std::size_t i = 0; i < sd.values.size(); ++i) {
      if (sd.values[i] > kInteriorClip && sd.values[i] < 1.0 - kInteriorClip) {
        inv.interior.push_back(sd.values[i]);
        inv.interior_multiplicity.push_back(sd.multiplicities[i]);
      }
    }
  }

  const Element* corners[4] = {&inv.pair.p_and_q, &inv.pair.p_and_qc, &inv.pair.pc_and_q,
                               &inv.pair.pc_and_qc};
  for (int i = 0; i < 4; ++i)
    if (corners[i]->coord_norm() > tol.eq_tol) inv.gamma.push_back(i);
  return inv;
}

int generated_subalgebra_expected_dim(const Element& p, const Element& q, bool with_unit,
                                      const Tolerances& tol) {
  TwoProjInvariants inv = two_proj_invariants(p, q, tol);
  int corners = 0;
  for (int g : inv.gamma)
    if (with_unit || g != 3) ++corners;  // the complement corner needs the unit
  return 3 * static_cast<int>(inv.interior.size()) + corners;
}

TwoProjRepresentation build_representation(const Element& p, const Element& q,
                                           const Tolerances& tol, Rng& rng) {
  require_same_algebra(p, q);
  const Algebra& alg = p.algebra();
  TwoProjInvariants inv = two_proj_invariants(p, q, tol);

  int blocks = static_cast<int>(inv.interior.size());
  int corners = static_cast<int>(inv.gamma.size());
  int model_size = 2 * blocks + corners;
  if (model_size == 0)
    throw VerificationFailure("two-projection form is empty (both projections zero?)", 0);
  Algebra model = Algebra::matrix(model_size);

  // Abstract block basis from spectral data of U_{p0}(q0):
  //   e_t  -> E11 of block t,
  //   X_t = (2 e_t o q0 - 2 U_{e_t}(q0)) / sqrt(t(1-t)) -> offdiagonal,
  //   f_t = U_{X_t}(e_t) -> E22.
  std::vector<Element> abstract;
  std::vector<Element> images;
  auto model_unit = [&](int r, int c) {
    Matrix M = Matrix::Zero(model_size, model_size);
    M(r, c) = 1.0;
    if (r != c) M(c, r) = 1.0;
    return from_matrix(model, M);
  };

  if (blocks > 0) {
    SpectralData sd = j_spectrum(u_operator(inv.pair.p0, inv.pair.q0), tol);
    int blk = 0;
    for (std::size_t i = 0; i < sd.values.size(); ++i) {
      double t = sd.values[i];
      if (t <= kInteriorClip || t >= 1.0 - kInteriorClip) continue;
      double st = std::sqrt(t * (1.0 - t));
      Element e = sd.projections[i];
      Element x = (2.0 / st) * (jordan_product(e, inv.pair.q0) - u_operator(e, inv.pair.q0));
      Element f = u_operator(x, e);
      abstract.push_back(e);
      images.push_back(model_unit(2 * blk, 2 * blk));
      abstract.push_back(x);
      images.push_back(model_unit(2 * blk, 2 * blk + 1));
      abstract.push_back(f);
      images.push_back(model_unit(2 * blk + 1, 2 * blk + 1));
      ++blk;
    }
  }
  const Element* corner_elems[4] = {&inv.pair.p_and_q, &inv.pair.p_and_qc,
                                    &inv.pair.pc_and_q, &inv.pair.pc_and_qc};
  for (int g = 0; g < corners; ++g) {
    abstract.push_back(*corner_elems[inv.gamma[g]]);
    images.push_back(model_unit(2 * blocks + g, 2 * blocks + g));
  }

  // Psi as a matrix: image coordinates times the pseudoinverse of the
  // abstract basis (defined on the span, zero on its orthocomplement).
  Matrix B(alg.dim(), abstract.size()), Mimg(model.dim(), abstract.size());
  for (std::size_t i = 0; i < abstract.size(); ++i) {
    B.col(i) = abstract[i].coords();
    Mimg.col(i) = images[i].coords();
  }
  Matrix pinv = B.completeOrthogonalDecomposition().pseudoInverse();
  JordanMap iso{alg, model, Mimg * pinv, generated_subalgebra(p, q, true, tol)};

  // Dimension accounting: the span-closure dimension must match the block
  // count 3 * #interior + #corners.
  if (static_cast<int>(iso.sample_span.size()) != 3 * blocks + corners)
    throw VerificationFailure("generated subalgebra dimension does not match the "
                              "canonical block count",
                              static_cast<double>(iso.sample_span.size()));

  TwoProjRepresentation rep{inv, iso, iso.apply(p), iso.apply(q), {}, blocks, corners};

  // The images of p and q must match the canonical forms.
  Matrix expect_p = Matrix::Zero(model_size, model_size);
  Matrix expect_q = Matrix::Zero(model_size, model_size);
  for (int b = 0; b < blocks; ++b) {
    double t = inv.interior[b];
    double st = std::sqrt(t * (1.0 - t));
    expect_p(2 * b, 2 * b) = 1.0;
    expect_q(2 * b, 2 * b) = t;
    expect_q(2 * b, 2 * b + 1) = expect_q(2 * b + 1, 2 * b) = st;
    expect_q(2 * b + 1, 2 * b + 1) = 1.0 - t;
  }
  for (int g = 0; g < corners; ++g) {
    int slot = 2 * blocks + g;
    if (inv.gamma[g] == 0) { expect_p(slot, slot) = 1; expect_q(slot, slot) = 1; }
    if (inv.gamma[g] == 1) { expect_p(slot, slot) = 1; }
    if (inv.gamma[g] == 2) { expect_q(slot, slot) = 1; }
  }
  double form_residual =
      std::max((rep.model_p - from_matrix(model, expect_p)).coord_norm(),
               (rep.model_q - from_matrix(model, expect_q)).coord_norm());

  rep.residuals = verify_jordan_map(iso, 50, tol, rng);
  if (!rep.residuals.verified(tol) || form_residual > tol.residual_tol)
    throw VerificationFailure("two-projection form failed residual verification",
                              std::max({rep.residuals.multiplicativity,
                                        rep.residuals.involution, rep.residuals.isometry,
                                        form_residual}));
  return rep;
}

SubprojectionOrthogonality orthogonality_by_subprojections(const Element& p,
                                                           const Element& q,
                                                           const Tolerances& tol, Rng& rng,
                                                           int samples) {
  require_projection(p, tol, "orthogonality_by_subprojections");
  require_projection(q, tol, "orthogonality_by_subprojections");
  if (p.coord_norm() <= tol.eq_tol || q.coord_norm() <= tol.eq_tol)
    throw PreconditionError("non-zero projections required");

  SubprojectionOrthogonality out{is_orthogonal(p, q, tol), std::nullopt, 0.0, 0};
  if (out.orthogonal) {
    for (int k = 0; k < samples; ++k) {
      Rng sub = rng.substream(k);
      Element r = random_subprojection(p, sub, tol, false, true);
      Element s = random_subprojection(q, sub, tol, false, true);
      double d = op_distance(r, s, tol);
      if (std::abs(d - 1.0) > tol.eq_tol)
        throw VerificationFailure("orthogonal pair with subprojections not at distance 1",
                                  d);
      ++out.verified_samples;
    }
    return out;
  }

  Element meet = lattice(p, q, tol).meet;
  if (meet.coord_norm() > tol.eq_tol) {
    out.falsifier = {meet, meet};
    out.falsifier_distance = 0.0;
    return out;
  }

  // Generic-part pair at the largest interior spectral value: distance
  // sqrt(1 - t) < 1.
  TwoProjInvariants inv = two_proj_invariants(p, q, tol);
  if (inv.interior.empty())
    throw Error("non-orthogonal pair with zero meet but no interior spectrum");
  double tmax = inv.interior.back();
  SpectralData sp = j_spectrum(u_operator(inv.pair.p0, inv.pair.q0), tol);
  SpectralData sq = j_spectrum(u_operator(inv.pair.q0, inv.pair.p0), tol);
  auto pick = [&](const SpectralData& sd) {
    for (std::size_t i = 0; i < sd.values.size(); ++i)
      if (std::abs(sd.values[i] - tmax) <= kInteriorClip) return sd.projections[i];
    throw Error("interior spectral projection not found");
  };
  Element r = pick(sp), s = pick(sq);
  out.falsifier = {r, s};
  out.falsifier_distance = op_distance(r, s, tol);
  return out;
}

}  // namespace jbstar
