#include "jbstar/suites.hpp"

#include <chrono>
#include <functional>

#include "jbstar/exceptional.hpp"
#include "jbstar/sampling.hpp"
#include "jbstar/spheres.hpp"
#include "jbstar/spin.hpp"
#include "jbstar/tingley.hpp"
#include "jbstar/two_projections.hpp"

namespace jbstar {

namespace {

struct CheckContext {
  Algebra algebra;
  Rng rng;
  int samples;
  Tolerances tol;
  CheckRecord* record;

  void residual(double r, double bound) {
    record->residual = r;
    record->pass = record->pass && r <= bound;
  }
  void require(bool ok, const std::string& note = "") {
    record->pass = record->pass && ok;
    if (!ok && !note.empty()) record->payload["failure"] = note;
  }
  void skip(const std::string& why) { record->payload["skipped"] = why; }
};

using CheckFn = std::function<void(CheckContext&)>;

struct Check {
  std::string name;
  std::string anchor;
  CheckFn fn;
};

bool has_kind(const Algebra& a, Kind k) {
  if (a.kind() == k) return true;
  if (!a.is_sum()) return false;
  for (const auto& p : a.summands())
    if (p.kind() == k) return true;
  return false;
}

// The one-dimensional model has no non-trivial projections; checks built
// on proper projection pairs skip there.
bool has_proper_projections(const Algebra& a) { return a.rank() >= 2; }

bool sums_of_matrix_and_spin(const Algebra& a) {
  for (const auto& b : a.is_sum() ? a.summands() : std::vector<Algebra>{a})
    if (b.kind() != Kind::MatrixAlgebra && b.kind() != Kind::SpinFactor) return false;
  return true;
}

// ---------------------------------------------------------------------------
// axioms

std::vector<Check> axioms_suite() {
  std::vector<Check> checks;
  checks.push_back({"jordan-identity", "Jordan identity (a o b) o b^2 = (a o b^2) o b",
                    [](CheckContext& c) {
                      double worst = 0;
                      for (int i = 0; i < 2 * c.samples; ++i) {
                        Element a = random_element(c.algebra, c.rng);
                        Element b = random_element(c.algebra, c.rng);
                        Element b2 = jordan_product(b, b);
                        double scale =
                            std::max(1.0, a.coord_norm() * std::pow(b.coord_norm(), 3));
                        worst = std::max(
                            worst, (jordan_product(jordan_product(a, b), b2) -
                                    jordan_product(jordan_product(a, b2), b))
                                           .coord_norm() /
                                       scale);
                      }
                      c.residual(worst, c.tol.residual_tol);
                    }});
  checks.push_back({"involution-star-algebra",
                    "involution is a period-2 conjugate-linear *-map",
                    [](CheckContext& c) {
                      double worst = 0;
                      for (int i = 0; i < c.samples; ++i) {
                        Element a = random_element(c.algebra, c.rng);
                        Element b = random_element(c.algebra, c.rng);
                        double scale = std::max(1.0, a.coord_norm() * b.coord_norm());
                        worst = std::max(worst,
                                         (involution(involution(a)) - a).coord_norm() /
                                             std::max(1.0, a.coord_norm()));
                        worst = std::max(
                            worst, (involution(jordan_product(a, b)) -
                                    jordan_product(involution(a), involution(b)))
                                           .coord_norm() /
                                       scale);
                      }
                      c.residual(worst, c.tol.residual_tol);
                    }});
  checks.push_back(
      {"power-associativity", "left-nested powers equal spectral powers",
       [](CheckContext& c) {
         double worst = 0;
         for (int i = 0; i < c.samples; ++i) {
           Element a = random_self_adjoint(c.algebra, c.rng);
           for (int n : {2, 3, 5}) {
             Element lhs = power(a, n);
             Element rhs = functional_calculus(
                 a, [n](double t) { return std::pow(t, n); }, c.tol);
             double scale = std::pow(std::max(1.0, op_norm(a, c.tol)), n);
             worst = std::max(worst, (lhs - rhs).coord_norm() / scale);
           }
         }
         c.residual(worst, c.tol.residual_tol);
       }});
  checks.push_back(
      {"spin-square-formula",
       "self-adjoint spin square (alpha e1 + iw)^2 = (alpha^2+||w||^2) e1 + 2 alpha iw",
       [](CheckContext& c) {
         if (!has_kind(c.algebra, Kind::SpinFactor)) return c.skip("no spin summand");
         Algebra sp = c.algebra.kind() == Kind::SpinFactor ? c.algebra : [&] {
           for (const auto& b : c.algebra.summands())
             if (b.kind() == Kind::SpinFactor) return b;
           return c.algebra;
         }();
         double worst = 0;
         for (int i = 0; i < c.samples; ++i) {
           Element a = random_self_adjoint(sp, c.rng);
           double alpha = a.coords()[0].real();
           double w2 = 0;
           for (int k = 1; k < sp.dim(); ++k)
             w2 += a.coords()[k].imag() * a.coords()[k].imag();
           Element expect = (alpha * alpha + w2) * Element::unit(sp) +
                            2.0 * alpha * (a - alpha * Element::unit(sp));
           worst = std::max(worst, (jordan_product(a, a) - expect).coord_norm() /
                                       std::max(1.0, a.coord_norm() * a.coord_norm()));
         }
         c.residual(worst, c.tol.residual_tol);
       }});
  checks.push_back(
      {"matrix-associative-expansions",
       "jordan/triple/U agree with their associative matrix expansions",
       [](CheckContext& c) {
         if (!has_kind(c.algebra, Kind::MatrixAlgebra))
           return c.skip("no matrix summand");
         Algebra m = c.algebra.kind() == Kind::MatrixAlgebra ? c.algebra : [&] {
           for (const auto& b : c.algebra.summands())
             if (b.kind() == Kind::MatrixAlgebra) return b;
           return c.algebra;
         }();
         double worst = 0;
         for (int i = 0; i < c.samples; ++i) {
           Element x = random_element(m, c.rng), y = random_element(m, c.rng),
                   z = random_element(m, c.rng);
           Matrix X = to_matrix(x), Y = to_matrix(y), Z = to_matrix(z);
           double s2 = std::max(1.0, x.coord_norm() * y.coord_norm());
           double s3 = std::max(s2, s2 * z.coord_norm());
           worst = std::max(worst, (jordan_product(x, y) -
                                    from_matrix(m, 0.5 * (X * Y + Y * X)))
                                           .coord_norm() /
                                       s2);
           worst = std::max(
               worst,
               (triple_product(x, y, z) -
                from_matrix(m, 0.5 * (X * Y.adjoint() * Z + Z * Y.adjoint() * X)))
                       .coord_norm() /
                   s3);
           worst = std::max(worst,
                            (u_operator(x, z) - from_matrix(m, X * Z * X)).coord_norm() /
                                s3);
         }
         c.residual(worst, c.tol.residual_tol);
       }});
  return checks;
}

// ---------------------------------------------------------------------------
// spectral

std::vector<Check> spectral_suite() {
  std::vector<Check> checks;
  checks.push_back({"reconstruction", "spectral resolution reconstructs the element",
                    [](CheckContext& c) {
                      double worst = 0;
                      for (int i = 0; i < 2 * c.samples; ++i) {
                        Element a = random_self_adjoint(c.algebra, c.rng);
                        SpectralData sd = j_spectrum(a, c.tol);
                        Element recon = Element::zero(c.algebra);
                        for (std::size_t k = 0; k < sd.values.size(); ++k)
                          recon = recon + sd.values[k] * sd.projections[k];
                        worst = std::max(worst, (recon - a).coord_norm() /
                                                    std::max(1.0, a.coord_norm()));
                      }
                      c.residual(worst, 10 * c.tol.spectral_tol);
                    }});
  checks.push_back({"norm-square-law", "||a^2|| = ||a||^2 for self-adjoint a",
                    [](CheckContext& c) {
                      double worst = 0;
                      for (int i = 0; i < c.samples; ++i) {
                        Element a = random_self_adjoint(c.algebra, c.rng);
                        double n = op_norm(a, c.tol);
                        worst = std::max(worst,
                                         std::abs(op_norm(jordan_product(a, a), c.tol) -
                                                  n * n) /
                                             std::max(1.0, n * n));
                      }
                      c.residual(worst, c.tol.residual_tol);
                    }});
  checks.push_back(
      {"functional-calculus-identity", "f = id reproduces the element",
       [](CheckContext& c) {
         double worst = 0;
         for (int i = 0; i < c.samples; ++i) {
           Element a = random_self_adjoint(c.algebra, c.rng);
           worst = std::max(worst, (functional_calculus(a, [](double t) { return t; },
                                                        c.tol) -
                                    a)
                                           .coord_norm() /
                                       std::max(1.0, a.coord_norm()));
         }
         c.residual(worst, 10 * c.tol.spectral_tol);
       }});
  checks.push_back(
      {"invertibility-by-distance", "||1 - a|| < 1 characterizes invertibility",
       [](CheckContext& c) {
         bool ok = true;
         for (int i = 0; i < c.samples; ++i) {
           Element a = random_positive_sphere(c.algebra, c.rng, c.tol);
           ok = ok && (invertible_by_distance(a, c.tol) ==
                       classify_positive(a, c.tol).invertible);
           Element b = random_positive_sphere_invertible(c.algebra, c.rng, c.tol);
           ok = ok && invertible_by_distance(b, c.tol);
         }
         c.require(ok);
       }});
  checks.push_back(
      {"spin-norm-closed-form", "spin norm formula matches |alpha| + ||w||",
       [](CheckContext& c) {
         if (!has_kind(c.algebra, Kind::SpinFactor)) return c.skip("no spin summand");
         Algebra sp = Algebra::spin(6);
         double worst = 0;
         for (int i = 0; i < 2 * c.samples; ++i) {
           Element a = random_self_adjoint(sp, c.rng);
           double alpha = a.coords()[0].real();
           double w2 = 0;
           for (int k = 1; k < 6; ++k) w2 += a.coords()[k].imag() * a.coords()[k].imag();
           worst = std::max(worst, std::abs(op_norm(a, c.tol) -
                                            (std::abs(alpha) + std::sqrt(w2))));
         }
         c.residual(worst, 1e-12);
       }});
  checks.push_back(
      {"cubic-multiplication-operator-oracle",
       "multiplication operator spectrum is {l_i} with all midpoints (l_i+l_j)/2",
       [](CheckContext& c) {
         if (!has_kind(c.algebra, Kind::OctonionHermitian3))
           return c.skip("no cubic summand");
         Algebra h3 = Algebra::h3o();
         double worst = 0;
         for (int i = 0; i < 2 * c.samples; ++i) {
           Element a = random_self_adjoint(h3, c.rng);
           auto roots = h3_cubic_spectrum(a.coords());
           Eigen::MatrixXd M = h3_multiplication_operator(a.coords());
           Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
           std::vector<double> expect;
           for (int k = 0; k < 3; ++k) expect.push_back(roots[k]);
           for (int k = 0; k < 3; ++k)
             for (int l = k + 1; l < 3; ++l)
               for (int rep = 0; rep < 8; ++rep)
                 expect.push_back(0.5 * (roots[k] + roots[l]));
           std::sort(expect.begin(), expect.end());
           double scale = std::max(1.0, std::abs(roots[0]) + std::abs(roots[2]));
           for (int k = 0; k < 27; ++k)
             worst = std::max(worst,
                              std::abs(es.eigenvalues()[k] - expect[k]) / scale);
         }
         c.residual(worst, 1e-9);
       }});
  return checks;
}

// ---------------------------------------------------------------------------
// projections

std::vector<Check> projections_suite() {
  std::vector<Check> checks;
  checks.push_back({"lattice-absorption", "p ^ (p v q) = p and p v (p ^ q) = p",
                    [](CheckContext& c) {
                      double worst = 0;
                      for (int i = 0; i < c.samples; ++i) {
                        Element p = random_projection(c.algebra, c.rng, c.tol);
                        Element q = random_projection(c.algebra, c.rng, c.tol);
                        auto l = lattice(p, q, c.tol);
                        worst = std::max(worst,
                                         (lattice(p, l.join, c.tol).meet - p).coord_norm());
                        worst = std::max(worst,
                                         (lattice(p, l.meet, c.tol).join - p).coord_norm());
                      }
                      c.residual(worst, c.tol.residual_tol);
                    }});
  checks.push_back({"de-morgan", "(p v q)' = p' ^ q' by construction",
                    [](CheckContext& c) {
                      Element one = Element::unit(c.algebra);
                      double worst = 0;
                      for (int i = 0; i < c.samples; ++i) {
                        Element p = random_projection(c.algebra, c.rng, c.tol);
                        Element q = random_projection(c.algebra, c.rng, c.tol);
                        worst = std::max(
                            worst, (one - lattice(p, q, c.tol).join -
                                    lattice(one - p, one - q, c.tol).meet)
                                           .coord_norm());
                      }
                      c.residual(worst, 1e-12);
                    }});
  checks.push_back(
      {"central-classification",
       "central projections are the block-unit sums (only 0 and 1 in a factor)",
       [](CheckContext& c) {
         bool ok = true;
         if (c.algebra.is_sum() && c.algebra.summands().size() <= 4) {
           int k = static_cast<int>(c.algebra.summands().size());
           for (int mask = 0; mask < (1 << k); ++mask) {
             Element p = Element::zero(c.algebra);
             for (int b = 0; b < k; ++b)
               if (mask & (1 << b))
                 p = p + Element::embed(c.algebra, b,
                                        Element::unit(c.algebra.summands()[b]));
             ok = ok && is_central(p, c.tol, c.rng, 5).central;
           }
         }
         for (int i = 0; i < c.samples; ++i) {
           Element p = random_projection(c.algebra, c.rng, c.tol, {true, true});
           bool unit_sum = true;  // is p a sum of block units?
           if (c.algebra.is_sum()) {
             for (std::size_t b = 0; b < c.algebra.summands().size() && unit_sum; ++b) {
               Element blk = p.block(static_cast<int>(b));
               bool zero = blk.coord_norm() <= c.tol.eq_tol;
               bool unit = (blk - Element::unit(c.algebra.summands()[b])).coord_norm() <=
                           c.tol.eq_tol;
               unit_sum = zero || unit;
             }
           } else {
             bool zero = p.coord_norm() <= c.tol.eq_tol;
             bool unit = (p - Element::unit(c.algebra)).coord_norm() <= c.tol.eq_tol;
             unit_sum = zero || unit;
           }
           ok = ok && (is_central(p, c.tol, c.rng, 5).central == unit_sum);
         }
         c.require(ok);
       }});
  checks.push_back(
      {"peirce-reconstruction",
       "Peirce parts recombine; U_p(a) = p forces the mixed part to vanish",
       [](CheckContext& c) {
         if (!has_proper_projections(c.algebra))
           return c.skip("no proper projections in this model");
         double worst = 0;
         for (int i = 0; i < c.samples; ++i) {
           Element p = random_projection(c.algebra, c.rng, c.tol, {false, false});
           Element a = random_self_adjoint(c.algebra, c.rng);
           auto parts = peirce_decompose(a, p, c.tol);
           worst = std::max(worst, (parts.part2 + parts.part1 + parts.part0 - a)
                                           .coord_norm() /
                                       std::max(1.0, a.coord_norm()));
           Element x = u_operator(Element::unit(c.algebra) - p,
                                  random_positive_sphere(c.algebra, c.rng, c.tol));
           double nx = op_norm(x, c.tol);
           Element b = p + (nx > c.tol.eq_tol ? 0.5 / nx * x : Element::zero(c.algebra));
           auto pb = peirce_decompose(b, p, c.tol);
           worst = std::max(worst, pb.part1.coord_norm());
           worst = std::max(worst, (pb.part2 - p).coord_norm());
         }
         c.residual(worst, c.tol.residual_tol);
       }});
  checks.push_back(
      {"spin-projection-family",
       "spin projections decompose as 0, 1 or (e1 + ib)/2 with unit b",
       [](CheckContext& c) {
         if (!has_kind(c.algebra, Kind::SpinFactor)) return c.skip("no spin summand");
         Algebra sp = Algebra::spin(5);
         bool ok = true;
         for (int i = 0; i < 2 * c.samples; ++i) {
           Element p = random_projection(sp, c.rng, c.tol, {true, true});
           auto sv = decompose_spin_projection(p, c.tol);
           ok = ok &&
                (spin_projection_element(sp, sv) - p).coord_norm() <= c.tol.eq_tol;
         }
         c.require(ok);
       }});
  return checks;
}

// ---------------------------------------------------------------------------
// spheres

std::vector<Check> spheres_suite() {
  std::vector<Check> checks;
  checks.push_back(
      {"diametrical-witness-iff",
       "pure-state witness exists exactly at diametrical distance",
       [](CheckContext& c) {
         bool ok = true;
         for (int i = 0; i < 4 * c.samples; ++i) {
           Element a = random_positive_sphere(c.algebra, c.rng, c.tol);
           Element b = random_positive_sphere(c.algebra, c.rng, c.tol);
           double d = op_distance(a, b, c.tol);
           auto w = diametrical_witness(a, b, c.tol, c.rng);
           if (w.has_value()) {
             ok = ok && d >= 1.0 - 1e-7;
             double lo = std::min(w->omega_a.real(), w->omega_b.real());
             double hi = std::max(w->omega_a.real(), w->omega_b.real());
             ok = ok && std::abs(lo) < 1e-7 && std::abs(hi - 1.0) < 1e-7;
           } else {
             ok = ok && d < 1.0 - c.tol.eq_tol;
           }
         }
         c.require(ok);
       }});
  checks.push_back(
      {"double-sphere-agreement",
       "double-sphere decision equals the spectral {0,1} criterion",
       [](CheckContext& c) {
         bool ok = true;
         for (int i = 0; i < 2 * c.samples; ++i) {
           Element a = (i % 8 == 0)
                           ? random_projection(c.algebra, c.rng, c.tol, {false, true})
                           : random_positive_sphere(c.algebra, c.rng, c.tol);
           SpectralData sd = j_spectrum(a, c.tol);
           bool spectral01 = true;
           for (double v : sd.values)
             if (v > 1e-9 && v < 1.0 - 1e-9) spectral01 = false;
           auto rep = double_sphere_test(a, c.tol, c.rng, 25);
           ok = ok && (rep.projection == spectral01);
           if (!rep.projection) ok = ok && rep.falsifier.has_value() && rep.certificate_ok;
           else ok = ok && rep.sweep_ok;
         }
         c.require(ok);
       }});
  checks.push_back(
      {"order-falsifier-bounds",
       "order falsifiers sit at distance 1 from p and below the branch bound from q",
       [](CheckContext& c) {
         if (!has_proper_projections(c.algebra))
           return c.skip("no proper projections in this model");
         bool ok = true;
         for (int i = 0; i < c.samples; ++i) {
           Element p = random_projection(c.algebra, c.rng, c.tol, {false, false});
           Element q = random_projection(c.algebra, c.rng, c.tol, {false, false});
           bool below = (jordan_product(p, q) - q).coord_norm() <= c.tol.residual_tol;
           auto rep = order_by_spheres(q, p, c.tol, c.rng, 10);
           ok = ok && (rep.q_leq_p == below);
           if (!rep.q_leq_p) {
             ok = ok && rep.falsifier.has_value();
             ok = ok && rep.falsifier_dist_p >= 1.0 - 1e-7;
             ok = ok && rep.falsifier_dist_q <= rep.falsifier_bound + 1e-7;
             ok = ok && classify_positive(*rep.falsifier, c.tol).invertible;
           }
         }
         c.require(ok);
       }});
  checks.push_back(
      {"corner-sphere-orthogonality",
       "corner spheres sit at distance 1 exactly for orthogonal projections",
       [](CheckContext& c) {
         if (!has_proper_projections(c.algebra))
           return c.skip("no proper projections in this model");
         bool ok = true;
         Element one = Element::unit(c.algebra);
         for (int i = 0; i < c.samples / 2; ++i) {
           Element p = random_projection(c.algebra, c.rng, c.tol, {false, false});
           Element comp = one - p;
           if (comp.coord_norm() > c.tol.eq_tol) {
             Element q = random_subprojection(comp, c.rng, c.tol, false, true);
             auto ev = orthogonality_by_corner_spheres(p, q, c.tol, c.rng, 10);
             ok = ok && ev.orthogonal && ev.min_sampled_distance >= 1.0 - c.tol.eq_tol;
           }
           Element r = random_projection(c.algebra, c.rng, c.tol, {false, false});
           if (!is_orthogonal(p, r, c.tol)) {
             auto ev = orthogonality_by_corner_spheres(p, r, c.tol, c.rng, 10);
             ok = ok && !ev.orthogonal && ev.close_pair.has_value() &&
                  ev.close_distance <= std::sqrt(1.0 - ev.delta) + c.tol.eq_tol;
           }
         }
         c.require(ok);
       }});
  checks.push_back(
      {"unit-characterization", "only the unit escapes every two-sphere cover",
       [](CheckContext& c) {
         Element one = Element::unit(c.algebra);
         auto u = unit_characterization(one, c.samples, c.tol, c.rng);
         bool ok = u.is_unit && u.all_covered;
         if (c.algebra.is_sum()) {
           Element block =
               Element::embed(c.algebra, 0, Element::unit(c.algebra.summands()[0]));
           auto cu = unit_characterization(block, c.samples, c.tol, c.rng);
           ok = ok && !cu.is_unit && cu.all_covered;
         }
         c.require(ok);
       }});
  return checks;
}

// ---------------------------------------------------------------------------
// two-proj

std::vector<Check> two_proj_suite() {
  std::vector<Check> checks;
  checks.push_back(
      {"dimension-accounting",
       "generated subalgebra dimension = 3 #interior + #corners",
       [](CheckContext& c) {
         if (!has_proper_projections(c.algebra))
           return c.skip("no proper projections in this model");
         bool ok = true;
         for (int i = 0; i < c.samples; ++i) {
           Element p = random_projection(c.algebra, c.rng, c.tol, {false, false});
           Element q = random_projection(c.algebra, c.rng, c.tol, {false, false});
           int expected = generated_subalgebra_expected_dim(p, q, true, c.tol);
           ok = ok && static_cast<int>(generated_subalgebra(p, q, true, c.tol).size()) ==
                          expected;
         }
         c.require(ok);
       }});
  checks.push_back(
      {"representation-residuals",
       "two-projection canonical form verifies as a Jordan *-isomorphism",
       [](CheckContext& c) {
         if (!has_proper_projections(c.algebra))
           return c.skip("no proper projections in this model");
         double worst = 0;
         bool ok = true;
         for (int i = 0; i < c.samples; ++i) {
           Element p = random_projection(c.algebra, c.rng, c.tol, {false, false});
           Element q = random_projection(c.algebra, c.rng, c.tol, {false, false});
           auto rep = build_representation(p, q, c.tol, c.rng);
           worst = std::max({worst, rep.residuals.multiplicativity,
                             rep.residuals.involution, rep.residuals.isometry});
           ok = ok && std::abs(op_distance(rep.model_p, rep.model_q, c.tol) -
                               op_distance(p, q, c.tol)) <= c.tol.eq_tol * 10;
         }
         c.require(ok);
         c.residual(worst, c.tol.residual_tol);
       }});
  checks.push_back(
      {"subprojection-orthogonality",
       "subprojection distances decide orthogonality",
       [](CheckContext& c) {
         if (!has_proper_projections(c.algebra))
           return c.skip("no proper projections in this model");
         bool ok = true;
         for (int i = 0; i < c.samples; ++i) {
           Element p = random_projection(c.algebra, c.rng, c.tol, {false, false});
           Element q = random_projection(c.algebra, c.rng, c.tol, {false, false});
           auto rep = orthogonality_by_subprojections(p, q, c.tol, c.rng, 10);
           ok = ok && rep.orthogonal == is_orthogonal(p, q, c.tol);
           if (!rep.orthogonal)
             ok = ok && rep.falsifier.has_value() &&
                  rep.falsifier_distance < 1.0 - c.tol.eq_tol;
         }
         c.require(ok);
       }});
  return checks;
}

// ---------------------------------------------------------------------------
// spin

std::vector<Check> spin_suite() {
  std::vector<Check> checks;
  checks.push_back(
      {"distance-formula", "||p - q|| = ||Y(p) - Y(q)|| / 2 for minimal projections",
       [](CheckContext& c) {
         double worst = 0;
         for (int i = 0; i < 20 * c.samples; ++i) {
           int n = 3 + static_cast<int>(c.rng.integer(6));
           Algebra sp = Algebra::spin(n);
           Eigen::VectorXd b(n - 1), d(n - 1);
           for (int k = 0; k < n - 1; ++k) { b[k] = c.rng.gaussian(); d[k] = c.rng.gaussian(); }
           b /= b.norm();
           d /= d.norm();
           SpinProjection p = upsilon_inv(b, c.tol), q = upsilon_inv(d, c.tol);
           worst = std::max(worst,
                            std::abs(min_proj_distance(p, q) -
                                     op_distance(spin_projection_element(sp, p),
                                                 spin_projection_element(sp, q), c.tol)));
         }
         c.residual(worst, 1e-12);
       }});
  checks.push_back(
      {"sqrt2-criterion",
       "distance sqrt(2)/2 is orthogonality of the parameter vectors",
       [](CheckContext& c) {
         bool ok = true;
         for (int i = 0; i < 10 * c.samples; ++i) {
           int n = 3 + static_cast<int>(c.rng.integer(6));
           Eigen::VectorXd b(n - 1), d0(n - 1);
           for (int k = 0; k < n - 1; ++k) { b[k] = c.rng.gaussian(); d0[k] = c.rng.gaussian(); }
           b /= b.norm();
           Eigen::VectorXd d = d0 - d0.dot(b) * b;
           if (d.norm() < 1e-6) continue;
           d /= d.norm();
           double dist = min_proj_distance(upsilon_inv(b, c.tol), upsilon_inv(d, c.tol));
           ok = ok && std::abs(dist - std::sqrt(2.0) / 2.0) <= 1e-12;
         }
         c.require(ok);
       }});
  checks.push_back(
      {"diametrical-criterion", "distance 1 exactly at the complement projection",
       [](CheckContext& c) {
         bool ok = true;
         for (int i = 0; i < 5 * c.samples; ++i) {
           int n = 3 + static_cast<int>(c.rng.integer(6));
           Algebra sp = Algebra::spin(n);
           Eigen::VectorXd b(n - 1);
           for (int k = 0; k < n - 1; ++k) b[k] = c.rng.gaussian();
           b /= b.norm();
           SpinProjection p = upsilon_inv(b, c.tol);
           SpinProjection q = upsilon_inv(Eigen::VectorXd(-b), c.tol);
           ok = ok && std::abs(min_proj_distance(p, q) - 1.0) <= 1e-12;
           ok = ok && (spin_projection_element(sp, q) -
                       (Element::unit(sp) - spin_projection_element(sp, p)))
                              .coord_norm() <= 1e-12;
           ok = ok && std::abs(op_norm(spin_projection_element(sp, p), c.tol) - 1.0) <=
                          1e-12;
         }
         c.require(ok);
       }});
  checks.push_back(
      {"counterexample-theta",
       "hemisphere map preserves order and diametrical pairs but not sqrt(2)/2",
       [](CheckContext& c) {
         SpinProjectionMap theta = counterexample_theta(c.rng.seed());
         bool ok = true;
         bool violation = false;
         for (int i = 0; i < 10 * c.samples; ++i) {
           Eigen::VectorXd b(2);
           b << c.rng.gaussian(), c.rng.gaussian();
           if (b.norm() < 1e-9) continue;
           b /= b.norm();
           SpinProjection p = upsilon_inv(b, c.tol);
           SpinProjection q = upsilon_inv(Eigen::VectorXd(-b), c.tol);
           ok = ok && (theta.map(p).b + theta.map(q).b).norm() == 0.0;
           Eigen::VectorXd cvec(2);
           cvec << -b[1], b[0];
           double after = theta.map(p).b.dot(theta.map(upsilon_inv(cvec, c.tol)).b);
           if (std::abs(after) > 0.01) violation = true;
         }
         theta.evidence() = {ok, ok, !violation, 10 * c.samples};
         c.require(ok && violation);
       }});
  checks.push_back(
      {"theta-extension-round-trip",
       "rotation-induced lattice maps extend to the generating rotation",
       [](CheckContext& c) {
         Algebra s5 = Algebra::spin(5);
         Eigen::MatrixXd O = random_orthogonal(4, c.rng);
         SpinProjectionMap theta(s5, s5, [O](const SpinProjection& p) {
           if (p.kind != SpinProjection::Kind::Minimal) return p;
           return SpinProjection::minimal(O * p.b);
         });
         JordanMap phi = jordan_iso_from_theta(theta, c.tol, c.rng, c.samples);
         c.residual((phi.matrix.block(1, 1, 4, 4).real() - O).norm(), 1e-9);
       }});
  return checks;
}

// ---------------------------------------------------------------------------
// glennie

std::vector<Check> glennie_suite() {
  std::vector<Check> checks;
  checks.push_back(
      {"special-model-identity", "the s-identity vanishes on special models",
       [](CheckContext& c) {
         if (has_kind(c.algebra, Kind::OctonionHermitian3))
           return c.skip("algebra has an exceptional summand");
         double worst = 0;
         for (int i = 0; i < 2 * c.samples; ++i) {
           Element x = random_box_self_adjoint(c.algebra, c.rng);
           Element y = random_box_self_adjoint(c.algebra, c.rng);
           Element z = random_box_self_adjoint(c.algebra, c.rng);
           worst = std::max(worst, op_norm(glennie_eval(x, y, z), c.tol));
         }
         c.residual(worst, 1e-10);
       }});
  checks.push_back(
      {"matrix-control", "control battery on the 3x3 matrix model",
       [](CheckContext& c) {
         Algebra m3 = Algebra::matrix(3);
         double worst = 0;
         for (int i = 0; i < 2 * c.samples; ++i) {
           Element x = random_box_self_adjoint(m3, c.rng);
           Element y = random_box_self_adjoint(m3, c.rng);
           Element z = random_box_self_adjoint(m3, c.rng);
           worst = std::max(worst, op_norm(glennie_eval(x, y, z), c.tol));
         }
         c.residual(worst, 1e-10);
       }});
  checks.push_back(
      {"exceptional-violation", "a violating triple exists in the cubic model",
       [](CheckContext& c) {
         if (!has_kind(c.algebra, Kind::OctonionHermitian3))
           return c.skip("no exceptional summand");
         auto res = glennie_violation_search(Algebra::h3o(), c.rng, 10000, 1e-3, c.tol);
         c.require(res.found);
         c.record->payload["violation_norm"] = res.norm;
         c.record->payload["trials_used"] = res.trials_used;
       }});
  return checks;
}

// ---------------------------------------------------------------------------
// tingley

std::vector<Check> tingley_suite() {
  std::vector<Check> checks;
  checks.push_back(
      {"round-trip", "synthesized sphere isometries extend back to their generators",
       [](CheckContext& c) {
         if (!sums_of_matrix_and_spin(c.algebra))
           return c.skip("extension pipeline needs matrix/spin summands");
         double worst = 0;
         for (int i = 0; i < 3; ++i) {
           Rng sub = c.rng.substream(i);
           JordanMap phi0 = random_jordan_iso(c.algebra, sub);
           SphereMap delta = synthesize_sphere_isometry(phi0, c.tol, sub);
           JordanMap phi = extend_isometry(delta, c.tol, sub, 2 * c.samples);
           for (int k = 0; k < 2 * c.samples; ++k) {
             Element x = random_positive_sphere(c.algebra, sub, c.tol);
             worst = std::max(worst, op_distance(phi.apply(x), delta(x), c.tol));
           }
         }
         c.residual(worst, 1e-8);
       }});
  checks.push_back(
      {"perturbation-rejected", "non-isometric sphere maps fail the pipeline",
       [](CheckContext& c) {
         if (!sums_of_matrix_and_spin(c.algebra))
           return c.skip("extension pipeline needs matrix/spin summands");
         if (!has_proper_projections(c.algebra))
           return c.skip("no interior spectrum to perturb in this model");
         SphereMap delta = synthesize_sphere_isometry(
             random_jordan_iso(c.algebra, c.rng), c.tol, c.rng);
         SphereMap bent = perturb_interior_spectrum(delta, 2, c.tol);
         bool rejected = false;
         double witness = 0;
         try {
           extend_isometry(bent, c.tol, c.rng, c.samples);
         } catch (const VerificationFailure& e) {
           rejected = true;
           witness = e.worst_residual;
         }
         c.require(rejected);
         c.record->payload["witness_gap"] = witness;
       }});
  checks.push_back(
      {"projection-transfer", "projection images, order, orthogonality, centrality",
       [](CheckContext& c) {
         if (!sums_of_matrix_and_spin(c.algebra))
           return c.skip("extension pipeline needs matrix/spin summands");
         if (!has_proper_projections(c.algebra))
           return c.skip("no proper projections in this model");
         SphereMap delta = synthesize_sphere_isometry(
             random_jordan_iso(c.algebra, c.rng), c.tol, c.rng);
         auto rep = extract_projection_map(delta, c.samples, c.tol, c.rng);
         c.require(rep.isometry_spot_check_ok && rep.order_preserved &&
                   rep.orthogonality_preserved && rep.centrality_preserved &&
                   rep.spin_summand_matching && rep.dominated_pairs_preserved);
         c.record->payload["sampled_projections"] = rep.sampled_projections;
       }});
  checks.push_back(
      {"order-route-agreement",
       "the three characterizations of q <= a agree on random instances",
       [](CheckContext& c) {
         if (!has_proper_projections(c.algebra))
           return c.skip("no proper projections in this model");
         bool ok = true;
         Element one = Element::unit(c.algebra);
         for (int i = 0; i < 2 * c.samples; ++i) {
           Element q = random_projection(c.algebra, c.rng, c.tol, {false, false});
           Element a = Element::zero(c.algebra);
           if (i % 2 == 0) {
             a = q + c.rng.uniform(0.2, 0.8) * (one - q);
           } else {
             a = random_positive_sphere_invertible(c.algebra, c.rng, c.tol);
           }
           auto cls = classify_positive(a, c.tol);
           if (!cls.invertible || std::abs(cls.norm - 1.0) > 100 * c.tol.eq_tol) continue;
           double margin = classify_positive(a - q, c.tol).min_eigenvalue;
           if (std::abs(margin) < 1e-7 && margin < 0) continue;  // boundary instance
           auto rep = projection_order_routes(q, a, c.tol, c.rng, 10);
           ok = ok && rep.agree;
         }
         c.require(ok);
       }});
  return checks;
}

std::vector<Check> suite_by_name(const std::string& name) {
  if (name == "axioms") return axioms_suite();
  if (name == "spectral") return spectral_suite();
  if (name == "projections") return projections_suite();
  if (name == "spheres") return spheres_suite();
  if (name == "two-proj") return two_proj_suite();
  if (name == "spin") return spin_suite();
  if (name == "glennie") return glennie_suite();
  if (name == "tingley") return tingley_suite();
  if (name == "all") {
    std::vector<Check> all;
    for (const auto& n : suite_names()) {
      if (n == "all") continue;
      auto part = suite_by_name(n);
      for (auto& chk : part) {
        chk.name = n + "/" + chk.name;
        all.push_back(std::move(chk));
      }
    }
    return all;
  }
  throw ParseError("unknown suite '" + name + "'");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"axioms",   "spectral", "projections",
                                              "spheres",  "two-proj", "spin",
                                              "glennie",  "tingley",  "all"};
  return names;
}

VerificationReport run_suite(const SuiteOptions& options) {
  options.tolerances.validate();
  Algebra alg = Algebra::parse(options.algebra);
  std::vector<Check> checks = suite_by_name(options.suite);

  VerificationReport report;
  report.suite = options.suite;
  report.algebra = alg.to_string();
  report.seed = options.seed;
  report.samples = options.samples;
  report.tolerances = options.tolerances;

  Rng master(options.seed);
  auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < checks.size(); ++i) {
    CheckRecord record;
    record.name = checks[i].name;
    record.anchor = checks[i].anchor;
    record.pass = true;
    CheckContext ctx{alg, master.substream(i), options.samples, options.tolerances,
                     &record};
    try {
      checks[i].fn(ctx);
    } catch (const Error& e) {
      record.pass = false;
      record.payload["error"] = e.what();
    }
    report.checks.push_back(std::move(record));
  }
  report.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace jbstar
