#include "jbstar/tingley.hpp"

#include <Eigen/QR>
#include <cmath>

#include "jbstar/sampling.hpp"
#include "jbstar/spectral.hpp"

namespace jbstar {

SphereMap synthesize_sphere_isometry(const JordanMap& phi, const Tolerances& tol,
                                     Rng& rng) {
  auto res = verify_jordan_map(phi, 50, tol, rng);
  if (!res.verified(tol) || !res.unital)
    throw VerificationFailure("generator is not a verified Jordan *-isomorphism",
                              std::max({res.multiplicativity, res.involution,
                                        res.isometry}));
  Matrix m = phi.matrix;
  return SphereMap{phi.domain, phi.codomain,
                   [m, cod = phi.codomain](const Element& x) {
                     return Element(cod, m * x.coords());
                   },
                   phi, ""};
}

SphereMap perturb_interior_spectrum(const SphereMap& base, int k, const Tolerances& tol) {
  auto inner = base.rule;
  Algebra src = base.source;
  return SphereMap{base.source, base.target,
                   [inner, k, tol](const Element& x) {
                     Element bent = functional_calculus(
                         x, [k](double t) { return std::pow(std::max(t, 0.0), k); }, tol);
                     return inner(bent);
                   },
                   base.generator, "interior-spectrum power " + std::to_string(k)};
}

// ---------------------------------------------------------------------------
// helpers

namespace {

std::vector<Algebra> block_list(const Algebra& a) {
  if (a.is_sum()) return a.summands();
  return {a};
}

Element embed_block(const Algebra& sum, int i, const Element& part) {
  if (!sum.is_sum()) return part;
  return Element::embed(sum, i, part);
}

Element take_block(const Element& x, int i) {
  if (!x.algebra().is_sum()) return x;
  return x.block(i);
}

/// Hermitian n x n matrices as real vectors of length n^2.
Eigen::VectorXd herm_to_real(const Matrix& H) {
  int n = static_cast<int>(H.rows());
  Eigen::VectorXd v(n * n);
  int k = 0;
  for (int i = 0; i < n; ++i) v[k++] = H(i, i).real();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      v[k++] = H(i, j).real();
      v[k++] = H(i, j).imag();
    }
  return v;
}

Matrix real_to_herm(int n, const Eigen::VectorXd& v) {
  Matrix H = Matrix::Zero(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i) H(i, i) = v[k++];
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double re = v[k++], im = v[k++];
      H(i, j) = Complex(re, im);
      H(j, i) = Complex(re, -im);
    }
  return H;
}

/// Rank-one projections spanning the hermitian part of Matrix(n).
std::vector<Matrix> spanning_projections(int n) {
  std::vector<Matrix> out;
  for (int i = 0; i < n; ++i) {
    Matrix P = Matrix::Zero(n, n);
    P(i, i) = 1.0;
    out.push_back(P);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix P = Matrix::Zero(n, n);
      P(i, i) = P(j, j) = 0.5;
      P(i, j) = P(j, i) = 0.5;
      out.push_back(P);
      Matrix Q = Matrix::Zero(n, n);
      Q(i, i) = Q(j, j) = 0.5;
      Q(i, j) = Complex(0, 0.5);
      Q(j, i) = Complex(0, -0.5);
      out.push_back(Q);
    }
  return out;
}

/// Real-linear map on hermitians from (input, output) samples, complexified
/// to a matrix over the canonical matrix-unit basis.
Matrix complexify_hermitian_fit(int n, const std::vector<Matrix>& ins,
                                const std::vector<Matrix>& outs) {
  int d = n * n;
  Eigen::MatrixXd X(ins.size(), d), Y(ins.size(), d);
  for (std::size_t k = 0; k < ins.size(); ++k) {
    X.row(k) = herm_to_real(ins[k]).transpose();
    Y.row(k) = herm_to_real(outs[k]).transpose();
  }
  Eigen::MatrixXd M = X.colPivHouseholderQr().solve(Y);  // X * M = Y
  auto L = [&](const Matrix& H) { return real_to_herm(n, M.transpose() * herm_to_real(H)); };

  Algebra block = Algebra::matrix(n);
  Matrix out(d, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Matrix img;
      if (i == j) {
        Matrix E = Matrix::Zero(n, n);
        E(i, i) = 1.0;
        img = L(E);
      } else {
        Matrix H1 = Matrix::Zero(n, n), H2 = Matrix::Zero(n, n);
        H1(i, j) = H1(j, i) = 1.0;
        H2(i, j) = Complex(0, 1);
        H2(j, i) = Complex(0, -1);
        img = 0.5 * (L(H1) - Complex(0, 1) * L(H2));
      }
      out.col(i * n + j) = from_matrix(block, img).coords();
    }
  return out;
}

/// Positive element of the corner of (the complement of) p0 with norm <= 1.
Element random_corner_positive(const Element& corner_unit, Rng& rng,
                               const Tolerances& tol) {
  Element x = u_operator(corner_unit,
                         random_positive_sphere(corner_unit.algebra(), rng, tol));
  double nx = op_norm(x, tol);
  if (nx <= tol.eq_tol) return Element::zero(corner_unit.algebra());
  return rng.uniform(0.2, 1.0) / nx * x;
}

}  // namespace

// ---------------------------------------------------------------------------
// extract_projection_map

ProjectionTransferReport extract_projection_map(const SphereMap& delta, int samples,
                                                const Tolerances& tol, Rng& rng) {
  ProjectionTransferReport report;
  const Algebra& src = delta.source;
  Element one = Element::unit(src);

  // Isometry spot check (flagged, not fatal: the report records evidence).
  for (int k = 0; k < std::max(8, samples / 4); ++k) {
    Rng sub = rng.substream(10000 + k);
    Element x = random_positive_sphere(src, sub, tol);
    Element y = (k % 3 == 0) ? random_projection(src, sub, tol, {false, true})
                             : random_positive_sphere(src, sub, tol);
    double gap = std::abs(op_distance(delta(x), delta(y), tol) - op_distance(x, y, tol));
    report.worst_isometry_gap = std::max(report.worst_isometry_gap, gap);
  }
  report.isometry_spot_check_ok = report.worst_isometry_gap <= 100 * tol.eq_tol;

  // Structured projections: block units and the unit itself.
  std::vector<Element> probes{one};
  auto blocks = block_list(src);
  if (src.is_sum())
    for (std::size_t i = 0; i < blocks.size(); ++i)
      probes.push_back(Element::embed(src, static_cast<int>(i),
                                      Element::unit(blocks[i])));
  for (int k = 0; k < samples; ++k) {
    Rng sub = rng.substream(k);
    probes.push_back(random_projection(src, sub, tol, {false, true}));
  }

  for (const auto& p : probes) {
    Element image = delta(p);
    if (!is_projection(image, tol))
      throw VerificationFailure(
          "sphere map sent a projection to a non-projection (isometry hypothesis fails)",
          (jordan_product(image, image) - image).coord_norm());
    report.assignments.emplace_back(p, image);
    ++report.sampled_projections;
  }

  // Order, orthogonality, centrality on sampled pairs.
  for (int k = 0; k < samples / 2; ++k) {
    Rng sub = rng.substream(20000 + k);
    Element p = random_projection(src, sub, tol, {false, false});
    Element q = random_subprojection(p, sub, tol, false, true);
    Element ip = delta(p), iq = delta(q);
    if ((jordan_product(ip, iq) - iq).coord_norm() > tol.residual_tol)
      report.order_preserved = false;

    Element comp = one - p;
    if (comp.coord_norm() > tol.eq_tol) {
      Element r = random_subprojection(comp, sub, tol, false, true);
      if (jordan_product(delta(p), delta(r)).coord_norm() > tol.residual_tol)
        report.orthogonality_preserved = false;
    }

    // Dominated pairs: p <= a with a invertible transports to the image, in
    // both directions.
    Element c = random_corner_positive(comp, sub, tol);
    double floor = sub.uniform(0.1, 0.6);
    Element a = p + floor * (comp - c * Complex(sub.uniform(0.0, 0.9), 0));
    auto cls = classify_positive(a, tol);
    if (cls.positive && cls.invertible && std::abs(cls.norm - 1.0) <= 100 * tol.eq_tol) {
      Element ia = delta(a);
      if (classify_positive(ia - delta(p), tol).min_eigenvalue < -100 * tol.eq_tol)
        report.dominated_pairs_preserved = false;
    }
    Element b = random_positive_sphere_invertible(src, sub, tol);
    bool dominates = classify_positive(b - p, tol).min_eigenvalue >= -tol.eq_tol;
    bool image_dominates =
        classify_positive(delta(b) - delta(p), tol).min_eigenvalue >= -tol.eq_tol;
    if (dominates != image_dominates) {
      // Tolerance-boundary instance? Only count clear margins as failures.
      double margin = std::abs(classify_positive(b - p, tol).min_eigenvalue);
      if (margin > 100 * tol.eq_tol) report.dominated_pairs_preserved = false;
    }
  }

  // Central projections go to central projections.
  if (src.is_sum()) {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      Element unit_i = Element::embed(src, static_cast<int>(i), Element::unit(blocks[i]));
      Element img = delta(unit_i);
      for (int d = 0; d < delta.target.dim(); ++d)
        if (!operator_commute(img, Element::basis(delta.target, d), tol)) {
          report.centrality_preserved = false;
          break;
        }
      // Spin summands match spin summands of the same dimension.
      if (blocks[i].kind() == Kind::SpinFactor) {
        bool matched = false;
        auto tblocks = block_list(delta.target);
        for (std::size_t j = 0; j < tblocks.size(); ++j) {
          if (tblocks[j].kind() != Kind::SpinFactor) continue;
          if (tblocks[j].size() != blocks[i].size()) continue;
          Element cand = embed_block(delta.target, static_cast<int>(j),
                                     Element::unit(tblocks[j]));
          if ((img - cand).coord_norm() <= tol.residual_tol) matched = true;
        }
        if (!matched) report.spin_summand_matching = false;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// projection_order_routes

OrderRouteReport projection_order_routes(const Element& q, const Element& a,
                                         const Tolerances& tol, Rng& rng, int samples) {
  require_projection(q, tol, "projection_order_routes");
  Element one = Element::unit(q.algebra());
  if (q.coord_norm() <= tol.eq_tol || (q - one).coord_norm() <= tol.eq_tol)
    throw PreconditionError("q must be a non-trivial projection");
  auto cls = classify_positive(a, tol);
  if (!cls.positive || !cls.invertible || std::abs(cls.norm - 1.0) > 100 * tol.eq_tol)
    throw PreconditionError("a must be an invertible positive norm-one element");

  OrderRouteReport rep{false, false, false, false, false, std::nullopt, 1.0};

  rep.route_spectral = classify_positive(a - q, tol).min_eigenvalue >= -tol.eq_tol;

  Element z = u_operator(q, a);
  auto parts = peirce_decompose(a, q, tol);
  rep.route_corner = (z - q).coord_norm() <= tol.residual_tol &&
                     parts.part1.coord_norm() <= tol.residual_tol;

  // Distance route: sampled subprojections plus the constructive candidate.
  bool distance_ok = true;
  for (int k = 0; k < samples; ++k) {
    Rng sub = rng.substream(k);
    Element r = random_subprojection(q, sub, tol, false, true);
    double d = op_norm(one - r - a, tol);
    if (d < 1.0 - tol.eq_tol) {
      distance_ok = false;
      if (!rep.witness_r) { rep.witness_r = r; rep.witness_distance = d; }
    }
  }
  if ((z - q).coord_norm() > tol.residual_tol) {
    // U_q(a) != q: the spectral projection at its smallest corner eigenvalue
    // is the witness from the equivalence proof.
    SpectralData sd = j_spectrum(z, tol);
    Element rstar = Element::zero(q.algebra());
    Element zero_part = Element::zero(q.algebra());
    for (std::size_t i = 0; i < sd.values.size(); ++i)
      if (std::abs(sd.values[i]) <= 1e-7) zero_part = zero_part + sd.projections[i];
    if (zero_part.coord_norm() > tol.eq_tol) {
      Element r0 = lattice(zero_part, q, tol).meet;
      if (r0.coord_norm() > tol.eq_tol) rstar = r0;
    }
    if (rstar.coord_norm() <= tol.eq_tol) {
      for (std::size_t i = 0; i < sd.values.size(); ++i)
        if (sd.values[i] > 1e-7 && sd.values[i] < 1.0 - 100 * tol.eq_tol) {
          rstar = sd.projections[i];
          break;
        }
    }
    if (rstar.coord_norm() > tol.eq_tol) {
      double d = op_norm(one - rstar - a, tol);
      if (d < 1.0 - tol.eq_tol) {
        distance_ok = false;
        if (!rep.witness_r) { rep.witness_r = rstar; rep.witness_distance = d; }
      }
    }
  }
  rep.route_distance = distance_ok;

  rep.agree = (rep.route_spectral == rep.route_corner) &&
              (rep.route_corner == rep.route_distance);
  rep.leq = rep.route_spectral;
  return rep;
}

// ---------------------------------------------------------------------------
// extend_isometry

namespace {

/// Matrix-summand reconstruction by corner-map affine fit. `p0` has the
/// whole summand inside its complement corner for multi-summand algebras;
/// single matrix algebras interpolate Delta on spanning projections and use
/// two minimal-p0 corner fits as the affinity/uniqueness verification.
Matrix reconstruct_matrix_block(const SphereMap& delta, const Algebra& src, int i,
                                int sigma_i, const Tolerances& tol, Rng& rng) {
  auto blocks = block_list(src);
  const Algebra block = blocks[i];
  int n = block.size();
  bool multi = src.is_sum();

  std::vector<Matrix> ins = spanning_projections(n);
  std::vector<Matrix> outs;
  double off_block_mass = 0;

  if (multi) {
    Element e_i = Element::embed(src, i, Element::unit(block));
    Element p0 = Element::unit(src) - e_i;
    Element q0 = delta(p0);
    for (const auto& P : ins) {
      Element probe = p0 + Element::embed(src, i, from_matrix(block, P));
      Element val = delta(probe) - q0;
      Element val_blk = take_block(val, sigma_i);
      off_block_mass = std::max(off_block_mass,
                                (val - embed_block(delta.target, sigma_i, val_blk))
                                    .coord_norm());
      outs.push_back(to_matrix(val_blk));
    }
  } else {
    for (const auto& P : ins) outs.push_back(to_matrix(delta(from_matrix(block, P))));
  }
  if (off_block_mass > tol.residual_tol)
    throw VerificationFailure("summand image leaked outside its matched summand",
                              off_block_mass);

  Matrix L = complexify_hermitian_fit(n, ins, outs);
  Algebra target_block = block_list(delta.target)[sigma_i];
  JordanMap block_map{block, target_block, L, {}};

  // Affinity verification at two base points: Delta(p0 + s) - Delta(p0) must
  // match the fitted linear map on fresh corner positives.
  auto corner_check = [&](const Element& p0_global, int extra) {
    Element q0 = delta(p0_global);
    Element corner_unit_global =
        multi ? Element::embed(src, i, Element::unit(block)) -
                    u_operator(p0_global, Element::embed(src, i, Element::unit(block)))
              : Element::unit(src) - p0_global;
    double worst = 0;
    for (int k = 0; k < extra; ++k) {
      Rng sub = rng.substream(31000 + k);
      Element s = random_corner_positive(corner_unit_global, sub, tol);
      if (s.coord_norm() <= tol.eq_tol) continue;
      Element lhs = delta(p0_global + s) - q0;
      Element s_blk = take_block(s, i);
      Element rhs = embed_block(delta.target, sigma_i, block_map.apply(s_blk));
      worst = std::max(worst, (lhs - rhs).coord_norm());
      // Midpoint affinity.
      Element s2 = 0.5 * s;
      Element mid = delta(p0_global + s2) - q0;
      Element rhs2 = embed_block(delta.target, sigma_i, block_map.apply(take_block(s2, i)));
      worst = std::max(worst, (mid - rhs2).coord_norm());
    }
    return worst;
  };

  double worst_affinity = 0;
  if (multi) {
    Element e_i = Element::embed(src, i, Element::unit(block));
    Element p0 = Element::unit(src) - e_i;
    worst_affinity = corner_check(p0, 25);
    // Independent base point: a random non-zero subprojection of 1 - e_i.
    Rng sub = rng.substream(32001);
    Element p0b = random_subprojection(p0, sub, tol, false, true);
    worst_affinity = std::max(worst_affinity, corner_check(p0b, 25));
  } else if (n >= 2) {
    for (int which = 0; which < 2; ++which) {
      Matrix P = Matrix::Zero(n, n);
      P(which, which) = 1.0;
      worst_affinity = std::max(worst_affinity,
                                corner_check(from_matrix(block, P), 25));
    }
  }
  if (worst_affinity > tol.residual_tol)
    throw VerificationFailure(
        "corner map is not affine-consistent with the fitted linear map (the sphere map "
        "is not an isometry restriction)",
        worst_affinity);
  return L;
}

Matrix reconstruct_spin_block(const SphereMap& delta, const Algebra& src, int i,
                              int sigma_i, const Tolerances& tol, Rng& rng) {
  auto blocks = block_list(src);
  const Algebra block = blocks[i];
  Algebra target_block = block_list(delta.target)[sigma_i];

  auto rule = [&delta, &src, i, sigma_i, block, tol](const SpinProjection& sp) {
    if (sp.kind != SpinProjection::Kind::Minimal) return sp;
    Element p = spin_projection_element(block, sp);
    Element img = delta(embed_block(src, i, p));
    Element img_blk = take_block(img, sigma_i);
    double leak = (img - embed_block(delta.target, sigma_i, img_blk)).coord_norm();
    if (leak > tol.residual_tol)
      throw VerificationFailure("summand image leaked outside its matched summand", leak);
    return decompose_spin_projection(img_blk, tol);
  };
  SpinProjectionMap theta(block, target_block, rule);
  JordanMap phi = jordan_iso_from_theta(theta, tol, rng, 60);
  return phi.matrix;
}

}  // namespace

JordanMap extend_isometry(const SphereMap& delta, const Tolerances& tol, Rng& rng,
                          int verify_samples) {
  const Algebra& src = delta.source;
  const Algebra& dst = delta.target;
  auto sblocks = block_list(src);
  auto tblocks = block_list(dst);
  for (const auto& b : sblocks)
    if (b.kind() != Kind::MatrixAlgebra && b.kind() != Kind::SpinFactor)
      throw PreconditionError(
          "extension pipeline supports finite sums of matrix and spin summands only");
  if (sblocks.size() != tblocks.size())
    throw PreconditionError("source and target summand counts differ");

  // Isometry spot check; a sphere map that fails here cannot extend.
  {
    double worst = 0;
    Element worst_x = Element::unit(src), worst_y = Element::unit(src);
    for (int k = 0; k < 40; ++k) {
      Rng sub = rng.substream(40000 + k);
      Element x = (k % 4 == 2) ? Element(random_projection(src, sub, tol, {false, true}))
                               : random_positive_sphere(src, sub, tol);
      Element y = (k % 4 == 0) ? random_positive_sphere_invertible(src, sub, tol)
                               : random_positive_sphere(src, sub, tol);
      double gap = std::abs(op_distance(delta(x), delta(y), tol) - op_distance(x, y, tol));
      if (gap > worst) { worst = gap; worst_x = x; worst_y = y; }
    }
    if (worst > 100 * tol.eq_tol)
      throw VerificationFailure("sphere map failed the isometry spot check", worst);
  }

  // Surjectivity spot check when provenance supplies an inverse: sampled
  // targets must have preimages.
  if (delta.generator) {
    Eigen::FullPivLU<Matrix> lu(delta.generator->matrix);
    if (lu.isInvertible()) {
      double worst = 0;
      for (int k = 0; k < 10; ++k) {
        Rng sub = rng.substream(41000 + k);
        Element y = random_positive_sphere(dst, sub, tol);
        Element x(src, lu.solve(y.coords()));
        worst = std::max(worst, (delta(x) - y).coord_norm());
      }
      if (worst > 1e-6)
        throw VerificationFailure("sampled targets have no preimage under the sphere map",
                                  worst);
    }
  }

  // Match summands through the images of the block units.
  std::vector<int> sigma(sblocks.size(), -1);
  if (src.is_sum()) {
    std::vector<bool> taken(tblocks.size(), false);
    for (std::size_t i = 0; i < sblocks.size(); ++i) {
      Element unit_i = Element::embed(src, static_cast<int>(i),
                                      Element::unit(sblocks[i]));
      Element img = delta(unit_i);
      for (std::size_t j = 0; j < tblocks.size(); ++j) {
        if (taken[j]) continue;
        Element cand = Element::embed(dst, static_cast<int>(j),
                                      Element::unit(tblocks[j]));
        if ((img - cand).coord_norm() <= 1000 * tol.spectral_tol) {
          sigma[i] = static_cast<int>(j);
          taken[j] = true;
          break;
        }
      }
      if (sigma[i] < 0)
        throw VerificationFailure("summand unit image is not a summand unit", 1.0);
      if (!(sblocks[i] == tblocks[sigma[i]]))
        throw VerificationFailure("matched summands have different descriptors", 1.0);
    }
  } else {
    sigma[0] = 0;
    if (!(sblocks[0] == tblocks[0]))
      throw PreconditionError("source and target descriptors differ");
    Element img = delta(Element::unit(src));
    if ((img - Element::unit(dst)).coord_norm() > 1000 * tol.spectral_tol)
      throw VerificationFailure("the unit does not map to the unit",
                                (img - Element::unit(dst)).coord_norm());
  }

  // Per-summand reconstruction and assembly.
  Matrix M = Matrix::Zero(dst.dim(), src.dim());
  for (std::size_t i = 0; i < sblocks.size(); ++i) {
    Matrix blockM;
    if (sblocks[i].kind() == Kind::MatrixAlgebra)
      blockM = reconstruct_matrix_block(delta, src, static_cast<int>(i), sigma[i], tol,
                                        rng);
    else
      blockM = reconstruct_spin_block(delta, src, static_cast<int>(i), sigma[i], tol,
                                      rng);
    M.block(dst.block_offset(sigma[i]), src.block_offset(static_cast<int>(i)),
            sblocks[i].dim(), sblocks[i].dim()) = blockM;
  }
  JordanMap phi{src, dst, M, {}};

  // Final verification: Jordan residuals plus pointwise agreement with the
  // sphere map.
  auto res = verify_jordan_map(phi, 50, tol, rng);
  if (!res.verified(tol) || !res.unital)
    throw VerificationFailure("assembled extension failed Jordan residuals",
                              std::max({res.multiplicativity, res.involution,
                                        res.isometry}));
  double worst = 0;
  for (int k = 0; k < verify_samples; ++k) {
    Rng sub = rng.substream(50000 + k);
    Element x = random_positive_sphere(src, sub, tol);
    worst = std::max(worst, op_distance(phi.apply(x), delta(x), tol));
  }
  if (worst > tol.residual_tol)
    throw VerificationFailure("assembled extension disagrees with the sphere map", worst);
  return phi;
}

}  // namespace jbstar
