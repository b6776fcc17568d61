#include "jbstar/spheres.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "jbstar/sampling.hpp"

namespace jbstar {

namespace {

void require_positive_sphere(const Element& a, const Tolerances& tol, const char* op) {
  auto report = classify_positive(a, tol);
  if (!report.positive)
    throw NotPositive(std::string(op) + " requires a positive element");
  if (std::abs(report.norm - 1.0) > 100 * tol.eq_tol)
    throw PreconditionError(std::string(op) + " requires a norm-one element (norm " +
                            std::to_string(report.norm) + ")");
}

/// Spectral projection onto the eigenvalue-1 part (empty sum if absent).
Element eigenspace_projection(const SpectralData& sd, const Algebra& alg, double at,
                              double width) {
  Element out = Element::zero(alg);
  for (std::size_t i = 0; i < sd.values.size(); ++i)
    if (std::abs(sd.values[i] - at) <= width) out = out + sd.projections[i];
  return out;
}

bool leq_projection(const Element& p, const Element& q, double tol) {
  return (jordan_product(p, q) - p).coord_norm() <= tol;
}

}  // namespace

Complex evaluate_state(const Element& minimal_projection, const Element& x) {
  Element ux = u_operator(minimal_projection, x);
  int idx = 0;
  minimal_projection.coords().cwiseAbs().maxCoeff(&idx);
  return ux.coords()[idx] / minimal_projection.coords()[idx];
}

Element minimal_subprojection(const Element& r, Rng& rng, const Tolerances& tol) {
  if (r.coord_norm() <= tol.eq_tol)
    throw PreconditionError("no minimal projection below 0");
  if (corner_basis(r, tol).size() == 1) return r;
  for (int tries = 0; tries < 128; ++tries) {
    Element x = u_operator(r, random_self_adjoint(r.algebra(), rng));
    SpectralData sd = j_spectrum(x, tol);
    for (std::size_t i = 0; i < sd.values.size(); ++i) {
      if (std::abs(sd.values[i]) <= tol.cluster_width()) continue;
      if (sd.multiplicities[i] != 1) continue;
      const Element& cand = sd.projections[i];
      if (corner_basis(cand, tol).size() == 1) return cand;
    }
  }
  throw Error("minimal_subprojection failed");
}

// ---------------------------------------------------------------------------
// diametrical_witness

namespace {

/// Matrix-model route: orthonormal bases of the 1-eigenspace of x and the
/// kernel of y intersect iff the top singular value of U1^H V0 is one.
std::optional<Vector> matrix_peak_zero_vector(const Element& x, const Element& y,
                                              const Tolerances& tol) {
  int n = x.algebra().size();
  Matrix X = to_matrix(x), Y = to_matrix(y);
  Eigen::SelfAdjointEigenSolver<Matrix> ex(0.5 * (X + X.adjoint()));
  Eigen::SelfAdjointEigenSolver<Matrix> ey(0.5 * (Y + Y.adjoint()));
  std::vector<int> one_cols, ker_cols;
  for (int i = 0; i < n; ++i) {
    if (ex.eigenvalues()[i] >= 1.0 - 100 * tol.eq_tol) one_cols.push_back(i);
    if (ey.eigenvalues()[i] <= 100 * tol.eq_tol) ker_cols.push_back(i);
  }
  if (one_cols.empty() || ker_cols.empty()) return std::nullopt;
  Matrix U1(n, one_cols.size()), V0(n, ker_cols.size());
  for (std::size_t i = 0; i < one_cols.size(); ++i) U1.col(i) = ex.eigenvectors().col(one_cols[i]);
  for (std::size_t i = 0; i < ker_cols.size(); ++i) V0.col(i) = ey.eigenvectors().col(ker_cols[i]);
  Eigen::JacobiSVD<Matrix> svd(U1.adjoint() * V0, Eigen::ComputeFullU);
  if (svd.singularValues()[0] < 1.0 - 100 * tol.eq_tol) return std::nullopt;
  Vector v = U1 * svd.matrixU().col(0);
  return v / v.norm();
}

}  // namespace

std::optional<PureStateWitness> diametrical_witness(const Element& a, const Element& b,
                                                    const Tolerances& tol, Rng& rng) {
  require_same_algebra(a, b);
  require_positive_sphere(a, tol, "diametrical_witness");
  require_positive_sphere(b, tol, "diametrical_witness");

  if (a.algebra().kind() == Kind::MatrixAlgebra) {
    for (auto [x, y, swapped] : {std::tuple{a, b, false}, std::tuple{b, a, true}}) {
      auto v = matrix_peak_zero_vector(x, y, tol);
      if (!v) continue;
      int n = a.algebra().size();
      Matrix P = (*v) * v->adjoint();
      Element pw = from_matrix(a.algebra(), P);
      Complex wa = evaluate_state(pw, a), wb = evaluate_state(pw, b);
      (void)n; (void)swapped;
      return PureStateWitness{pw, *v, wa, wb};
    }
    return std::nullopt;
  }

  // Lattice route: meet of the 1-eigenspace of one side with the kernel of
  // the other.
  SpectralData sa = j_spectrum(a, tol), sb = j_spectrum(b, tol);
  Element one = Element::unit(a.algebra());
  double width = 100 * tol.eq_tol;
  for (auto [sx, y] : {std::pair{&sa, &b}, std::pair{&sb, &a}}) {
    Element p1 = eigenspace_projection(*sx, a.algebra(), 1.0, width);
    if (p1.coord_norm() <= tol.eq_tol) continue;
    Element ry = range_projection(*y, tol);
    Element meet = lattice(p1, one - ry, tol).meet;
    if (meet.coord_norm() <= tol.eq_tol) continue;
    Element pw = minimal_subprojection(meet, rng, tol);
    return PureStateWitness{pw, std::nullopt, evaluate_state(pw, a), evaluate_state(pw, b)};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// double_sphere_test

namespace {

/// c in Sph(p) with ||c - b|| < 1, refuting b's membership in Sph(Sph(p)).
/// Follows the constructive recipes of the characterization proof.
std::optional<Element> refute_candidate(const Element& p, const Element& b,
                                        const Tolerances& tol) {
  Element one = Element::unit(p.algebra());
  Element corner = u_operator(one - p, b);
  Element inner = u_operator(p, b);

  if (inner.coord_norm() <= tol.residual_tol) return b;  // b orthogonal to p

  if ((inner - p).coord_norm() <= tol.residual_tol) {
    // b = p + corner part; rescaling the corner to norm one lands in Sph(p).
    double delta = op_norm(corner, tol);
    if (delta <= tol.eq_tol) return std::nullopt;  // b == p
    return p + (1.0 / delta) * corner;
  }

  // General case: shrink along a corner eigenprojection q <= p where the
  // compression of b has norm < 1, then average with the complement sphere.
  SpectralData sd = j_spectrum(inner, tol);
  Element q = Element::zero(p.algebra());
  Element zero_part = eigenspace_projection(sd, p.algebra(), 0.0, tol.cluster_width());
  if (zero_part.coord_norm() > tol.eq_tol) {
    Element r0 = lattice(zero_part, p, tol).meet;
    if (r0.coord_norm() > tol.eq_tol) q = r0;
  }
  if (q.coord_norm() <= tol.eq_tol) {
    for (std::size_t i = 0; i < sd.values.size(); ++i) {
      if (sd.values[i] <= tol.cluster_width()) continue;
      if (sd.values[i] < 1.0 - 100 * tol.eq_tol) { q = sd.projections[i]; break; }
    }
  }
  if (q.coord_norm() <= tol.eq_tol) return std::nullopt;
  Element rest = u_operator(one - q, b);
  double delta2 = op_norm(rest, tol);
  if (delta2 <= tol.eq_tol) return std::nullopt;
  return 0.5 * ((one - q) + (1.0 / delta2) * rest);
}

}  // namespace

DoubleSphereReport double_sphere_test(const Element& a, const Tolerances& tol, Rng& rng,
                                      int sweep_candidates) {
  require_positive_sphere(a, tol, "double_sphere_test");
  SpectralData sd = j_spectrum(a, tol);

  std::vector<double> interior;
  for (double v : sd.values)
    if (v > tol.cluster_width() && v < 1.0 - tol.cluster_width()) interior.push_back(v);

  DoubleSphereReport report{interior.empty(), std::nullopt, false, 0, false, 0.0};

  if (!interior.empty()) {
    // Piecewise-linear f with threshold at the largest interior point.
    double lambda = interior.back();
    auto f = [lambda](double t) {
      if (t <= lambda / 2) return 0.0;
      if (t >= lambda) return 1.0;
      return (t - lambda / 2) / (lambda / 2);
    };
    Element b = functional_calculus(a, f, tol);
    report.falsifier = b;

    SpectralData sb = j_spectrum(b, tol);
    Element p0a = eigenspace_projection(sd, a.algebra(), 0.0, tol.cluster_width());
    Element p1a = eigenspace_projection(sd, a.algebra(), 1.0, tol.cluster_width());
    Element p0b = eigenspace_projection(sb, a.algebra(), 0.0, tol.cluster_width());
    Element p1b = eigenspace_projection(sb, a.algebra(), 1.0, tol.cluster_width());
    bool zero_ok = p0a.coord_norm() <= tol.eq_tol ||
                   leq_projection(p0a, p0b, tol.spectral_tol);
    bool one_ok = p1a.coord_norm() <= tol.eq_tol ||
                  leq_projection(p1a, p1b, tol.spectral_tol);
    bool distinct = (b - a).coord_norm() > tol.eq_tol;
    report.certificate_ok = zero_ok && one_ok && distinct;
    return report;
  }

  // Projection case: refutation sweep.
  report.sweep_ok = true;
  Element one = Element::unit(a.algebra());
  bool is_unit = (a - one).coord_norm() <= tol.eq_tol;
  for (int k = 0; k < sweep_candidates; ++k) {
    Rng sub = rng.substream(k);
    Element b = Element::zero(a.algebra());
    if (!is_unit && k % 3 == 0) {
      // Candidates of the form a + scaled complement corner.
      Element x = u_operator(one - a, random_positive_sphere(a.algebra(), sub, tol));
      double nx = op_norm(x, tol);
      if (nx <= tol.eq_tol) { b = random_positive_sphere(a.algebra(), sub, tol); }
      else b = a + sub.uniform(0.1, 0.95) / nx * x;
    } else {
      b = random_positive_sphere(a.algebra(), sub, tol);
    }
    if ((b - a).coord_norm() <= tol.eq_tol) continue;

    auto c = refute_candidate(a, b, tol);
    bool refuted = false;
    if (c) {
      auto cls = classify_positive(*c, tol);
      double dist_p = op_distance(*c, a, tol);
      double dist_b = op_distance(*c, b, tol);
      refuted = cls.positive && std::abs(cls.norm - 1.0) <= 100 * tol.eq_tol &&
                dist_p >= 1.0 - 100 * tol.eq_tol && dist_b < 1.0 - tol.eq_tol;
      if (refuted)
        report.worst_refutation_distance = std::max(report.worst_refutation_distance, dist_b);
    }
    if (refuted) ++report.candidates_refuted;
    else report.sweep_ok = false;
  }
  return report;
}

// ---------------------------------------------------------------------------
// order_by_spheres

namespace {

/// Invertible positive norm-one element of Sph(p): small positive invertible
/// mass on the corner of p, full norm on the complement corner.
Element sphere_invertible_off_p(const Element& p, const Tolerances& tol, Rng& rng) {
  Element one = Element::unit(p.algebra());
  Element comp = one - p;
  double delta = rng.uniform(0.1, 0.5);

  Element xp = u_operator(p, random_positive_sphere(p.algebra(), rng, tol));
  double nxp = op_norm(xp, tol);
  Element cp = delta * p + (nxp > tol.eq_tol ? (1.0 - delta) / nxp * xp
                                             : Element::zero(p.algebra()));

  Element xc = u_operator(comp, random_positive_sphere(p.algebra(), rng, tol));
  double nxc = op_norm(xc, tol);
  Element cc = delta * comp + (nxc > tol.eq_tol ? (1.0 - delta) / nxc * xc
                                                : Element::zero(p.algebra()));
  cc = (1.0 / op_norm(cc, tol)) * cc;

  double eps = rng.uniform(0.05, 0.9);
  return eps * cp + cc;
}

}  // namespace

OrderBySpheresReport order_by_spheres(const Element& q, const Element& p,
                                      const Tolerances& tol, Rng& rng, int samples) {
  require_projection(p, tol, "order_by_spheres");
  require_projection(q, tol, "order_by_spheres");
  if (p.coord_norm() <= tol.eq_tol || q.coord_norm() <= tol.eq_tol)
    throw PreconditionError("order_by_spheres requires non-zero projections");

  bool leq = (jordan_product(p, q) - q).coord_norm() <= tol.residual_tol;
  OrderBySpheresReport report{leq, std::nullopt, 0, 0, 0, 0};
  Element one = Element::unit(p.algebra());

  if (leq) {
    if ((p - one).coord_norm() <= tol.eq_tol) return report;  // Sph(1) has no invertibles
    for (int k = 0; k < samples; ++k) {
      Rng sub = rng.substream(k);
      Element a = sphere_invertible_off_p(p, tol, sub);
      double dp = op_distance(a, p, tol), dq = op_distance(a, q, tol);
      if (dp < 1.0 - 100 * tol.eq_tol)
        throw VerificationFailure("sampled element missed Sph(p)", dp);
      if (dq < 1.0 - 100 * tol.eq_tol)
        throw VerificationFailure("Sph(p) invertible sample escaped Sph(q)", dq);
      ++report.verified_samples;
    }
    return report;
  }

  ProjectionPair pair = corner_projections(p, q, tol);
  Element a = Element::zero(p.algebra());
  if (pair.pc_and_q.coord_norm() > tol.eq_tol) {
    a = 0.5 * (one + pair.pc_and_q);
    report.falsifier_bound = 0.5;
  } else {
    SpectralData upq = j_spectrum(u_operator(pair.p0, pair.q0), tol);
    double tmax = 0;
    for (double v : upq.values)
      if (v > tol.cluster_width() && v < 1.0 - tol.cluster_width()) tmax = std::max(tmax, v);
    if (tmax == 0)
      throw Error("order falsifier: no interior spectrum although q is not below p");
    Element j0 = lattice(pair.p0, pair.q0, tol).join;
    double eps = std::min(0.1, (1.0 - std::sqrt(tmax)) / 2.0);
    a = eps * pair.p0 + (j0 - pair.p0) + 0.5 * (one - j0);
    report.falsifier_bound = std::max(0.5, eps + std::sqrt(tmax));
  }
  report.falsifier = a;
  report.falsifier_dist_p = op_distance(a, p, tol);
  report.falsifier_dist_q = op_distance(a, q, tol);
  return report;
}

bool invertible_by_distance(const Element& a, const Tolerances& tol) {
  require_positive_sphere(a, tol, "invertible_by_distance");
  Element one = Element::unit(a.algebra());
  bool by_distance = op_distance(one, a, tol) < 1.0 - tol.eq_tol;
  bool by_spectrum = classify_positive(a, tol).invertible;
  if (by_distance != by_spectrum)
    throw VerificationFailure("distance and spectral invertibility disagree",
                              op_distance(one, a, tol));
  return by_distance;
}

UnitCharacterization unit_characterization(const Element& p, int samples,
                                           const Tolerances& tol, Rng& rng) {
  require_projection(p, tol, "unit_characterization");
  if (p.coord_norm() <= tol.eq_tol)
    throw PreconditionError("unit_characterization requires a non-zero projection");
  const Algebra& alg = p.algebra();
  for (int i = 0; i < alg.dim(); ++i)
    if (!operator_commute(p, Element::basis(alg, i), tol))
      throw PreconditionError("unit_characterization requires a central projection");

  Element one = Element::unit(alg);
  UnitCharacterization out{(p - one).coord_norm() <= tol.eq_tol, {}, true};

  for (int k = 0; k < samples; ++k) {
    Rng sub = rng.substream(k);
    Element a = random_positive_sphere(alg, sub, tol);
    UnitCoverSample s{0, 0, false, 0, 0};
    if (out.is_unit) {
      Element c = 0.5 * (one + a);
      s.midpoint_dist_one = op_distance(c, one, tol);
      s.midpoint_dist_a = op_distance(c, a, tol);
      s.covered = s.midpoint_dist_one <= 0.5 + tol.eq_tol &&
                  s.midpoint_dist_a <= 0.5 + tol.eq_tol;
    } else {
      s.dist_p = op_distance(a, p, tol);
      s.dist_comp = op_distance(a, one - p, tol);
      s.covered = s.dist_p >= 1.0 - tol.eq_tol || s.dist_comp >= 1.0 - tol.eq_tol;
    }
    out.all_covered = out.all_covered && s.covered;
    out.cover.push_back(s);
  }
  return out;
}

CornerSphereEvidence orthogonality_by_corner_spheres(const Element& p, const Element& q,
                                                     const Tolerances& tol, Rng& rng,
                                                     int samples) {
  require_projection(p, tol, "orthogonality_by_corner_spheres");
  require_projection(q, tol, "orthogonality_by_corner_spheres");
  if (p.coord_norm() <= tol.eq_tol || q.coord_norm() <= tol.eq_tol)
    throw PreconditionError("non-zero projections required");

  CornerSphereEvidence out{is_orthogonal(p, q, tol), 0, 2.0, std::nullopt, 1.0, 0.0};
  if (out.orthogonal) {
    for (int k = 0; k < samples; ++k) {
      Rng sub = rng.substream(k);
      Element xa = u_operator(p, random_positive_sphere(p.algebra(), sub, tol));
      Element xb = u_operator(q, random_positive_sphere(p.algebra(), sub, tol));
      double na = op_norm(xa, tol), nb = op_norm(xb, tol);
      if (na <= tol.eq_tol || nb <= tol.eq_tol) continue;
      double d = op_distance(1.0 / na * xa, 1.0 / nb * xb, tol);
      out.min_sampled_distance = std::min(out.min_sampled_distance, d);
      ++out.sampled_pairs;
    }
    return out;
  }

  // Non-orthogonal: the f-scaled corner pair from the two-projection picture.
  SpectralData upq = j_spectrum(u_operator(p, q), tol);
  double t0 = 0;
  for (double v : upq.values)
    if (v > tol.cluster_width() && v < 1.0 - tol.cluster_width()) { t0 = v; break; }
  if (t0 == 0) {
    // No interior spectrum but p o q != 0: the meet is a common part.
    Element m = lattice(p, q, tol).meet;
    out.close_pair = {m, m};
    out.close_distance = 0.0;
    out.delta = 1.0;
    return out;
  }
  double delta = std::min(t0, 0.8) / 2.0;
  auto f = [delta](double t) {
    if (t < delta / 2) return 0.0;
    if (t >= delta) return 1.0;
    return 2.0 / delta * t - 1.0;
  };
  Element a = functional_calculus(u_operator(p, q), f, tol);
  Element b = functional_calculus(u_operator(q, p), f, tol);
  out.close_pair = {a, b};
  out.close_distance = op_distance(a, b, tol);
  out.delta = delta;
  return out;
}

}  // namespace jbstar
