#include "test_util.hpp"

#include "jbstar/spheres.hpp"

using namespace jt;

namespace {
const Tolerances tol;
}

TEST_CASE("diametrical witness on frozen matrix cases") {
  Algebra m2 = Algebra::matrix(2);
  Rng rng(3);

  // a = p, b = 1 - p: witness with values {0,1}.
  Element p = mat2(m2, {1, 0, 0, 0});
  auto w1 = diametrical_witness(p, Element::unit(m2) - p, tol, rng);
  REQUIRE(w1.has_value());
  double lo = std::min(w1->omega_a.real(), w1->omega_b.real());
  double hi = std::max(w1->omega_a.real(), w1->omega_b.real());
  CHECK(std::abs(lo) < 1e-9);
  CHECK(std::abs(hi - 1.0) < 1e-9);
  CHECK(w1->vector.has_value());

  // ||a - b|| = 0.8 < 1: no witness.
  auto w2 = diametrical_witness(mat2(m2, {1, 0, 0, 0.3}), mat2(m2, {0.2, 0, 0, 1}), tol,
                                rng);
  CHECK_FALSE(w2.has_value());

  // a = diag(1, 1/2), b = diag(0, 1): witness e1 with w(a)=1, w(b)=0.
  auto w3 = diametrical_witness(mat2(m2, {1, 0, 0, 0.5}), mat2(m2, {0, 0, 0, 1}), tol,
                                rng);
  REQUIRE(w3.has_value());
  CHECK(std::abs(w3->omega_a.real() - 1.0) < 1e-9);
  CHECK(std::abs(w3->omega_b.real()) < 1e-9);
  REQUIRE(w3->vector.has_value());
  CHECK(std::abs((*w3->vector)[0]) == doctest::Approx(1.0));
}

TEST_CASE("diametrical witness iff distance one, sampled per model") {
  Rng rng(5);
  for (const Algebra& alg :
       {Algebra::matrix(3), Algebra::spin(5), Algebra::h3o(),
        Algebra::parse("sum:mat:2,spin:4")}) {
    INFO(alg.to_string());
    int n = alg.kind() == Kind::OctonionHermitian3 ? 60 : 200;
    for (int i = 0; i < n; ++i) {
      Rng sub = rng.substream(i);
      Element a = random_positive_sphere(alg, sub, tol);
      Element b = random_positive_sphere(alg, sub, tol);
      double d = op_distance(a, b, tol);
      auto w = diametrical_witness(a, b, tol, sub);
      if (w.has_value()) {
        CHECK(d >= 1.0 - 1e-7);
        double lo = std::min(w->omega_a.real(), w->omega_b.real());
        double hi = std::max(w->omega_a.real(), w->omega_b.real());
        CHECK(std::abs(lo) < 1e-7);
        CHECK(std::abs(hi - 1.0) < 1e-7);
      } else {
        CHECK(d < 1.0 - tol.eq_tol);
      }
    }

    // Constructed distance-one pairs always get a witness.
    for (int i = 0; i < 50; ++i) {
      Rng sub = rng.substream(1000 + i);
      Element p = random_projection(alg, sub, tol, {false, false});
      Element comp = Element::unit(alg) - p;
      Element x = u_operator(comp, random_positive_sphere(alg, sub, tol));
      double nx = op_norm(x, tol);
      Element a = p + (nx > 1e-12 ? sub.uniform(0.0, 0.9) / nx * x : Element::zero(alg));
      Element y = u_operator(comp, random_positive_sphere(alg, sub, tol));
      double ny = op_norm(y, tol);
      if (ny <= 1e-12) continue;
      Element b = 1.0 / ny * y;
      REQUIRE(op_distance(a, b, tol) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(diametrical_witness(a, b, tol, sub).has_value());
    }
  }
}

TEST_CASE("pure states: unital and positive on squares") {
  Rng rng(29);
  for (const Algebra& alg : {Algebra::matrix(3), Algebra::spin(5), Algebra::h3o()}) {
    INFO(alg.to_string());
    Element one = Element::unit(alg);
    for (int i = 0; i < 10; ++i) {
      Element pw = minimal_subprojection(one, rng, tol);
      CHECK(std::abs(evaluate_state(pw, one) - Complex(1, 0)) < 1e-9);
      for (int k = 0; k < 5; ++k) {
        Element x = random_element(alg, rng);
        Complex sq = evaluate_state(pw, jordan_product(x, involution(x)));
        CHECK(sq.real() > -1e-9);
        CHECK(std::abs(sq.imag()) < 1e-8 * std::max(1.0, std::abs(sq.real())));
      }
    }
  }
}

TEST_CASE("diametrical witness rejects non-sphere inputs") {
  Algebra m2 = Algebra::matrix(2);
  Rng rng(7);
  CHECK_THROWS_AS(diametrical_witness(mat2(m2, {0.5, 0, 0, 0.5}),
                                      mat2(m2, {1, 0, 0, 0}), tol, rng),
                  PreconditionError);
  CHECK_THROWS_AS(diametrical_witness(mat2(m2, {1, 0, 0, -1}),
                                      mat2(m2, {1, 0, 0, 0}), tol, rng),
                  NotPositive);
}

TEST_CASE("double sphere: frozen falsifiers") {
  Algebra m2 = Algebra::matrix(2);
  Rng rng(9);

  auto r = double_sphere_test(mat2(m2, {1, 0, 0, 0.5}), tol, rng);
  CHECK_FALSE(r.projection);
  REQUIRE(r.falsifier.has_value());
  CHECK(r.certificate_ok);
  // The ramp reaching one at the largest interior point sends both spectral
  // values to one here.
  CHECK(dist(*r.falsifier, Element::unit(m2)) < 1e-9);

  // An element with an eigenvalue below lambda/2 keeps its kernel.
  Algebra m3 = Algebra::matrix(3);
  Vector v = Vector::Zero(9);
  v[0] = 1.0; v[4] = 0.6; v[8] = 0.1;
  auto r3 = double_sphere_test(Element(m3, v), tol, rng);
  CHECK_FALSE(r3.projection);
  REQUIRE(r3.falsifier.has_value());
  CHECK(r3.certificate_ok);
  Vector expect = Vector::Zero(9);
  expect[0] = 1.0; expect[4] = 1.0; expect[8] = 0.0;
  CHECK(dist(*r3.falsifier, Element(m3, expect)) < 1e-9);
}

TEST_CASE("double sphere: projections survive the refutation sweep") {
  Rng rng(11);
  for (const Algebra& alg : {Algebra::matrix(3), Algebra::spin(5)}) {
    INFO(alg.to_string());
    auto unit_rep = double_sphere_test(Element::unit(alg), tol, rng);
    CHECK(unit_rep.projection);
    CHECK(unit_rep.sweep_ok);
    CHECK(unit_rep.candidates_refuted > 0);
    CHECK(unit_rep.worst_refutation_distance < 1.0 - tol.eq_tol);

    for (int i = 0; i < 5; ++i) {
      Element p = random_projection(alg, rng, tol, {false, false});
      auto rep = double_sphere_test(p, tol, rng);
      CHECK(rep.projection);
      CHECK(rep.sweep_ok);
      CHECK(rep.candidates_refuted > 0);
    }
  }
}

TEST_CASE("double sphere agrees with the spectral criterion on random elements") {
  Rng rng(13);
  for (const Algebra& alg : {Algebra::matrix(3), Algebra::spin(5)}) {
    for (int i = 0; i < 100; ++i) {
      Rng sub = rng.substream(i);
      Element a = random_positive_sphere(alg, sub, tol);
      SpectralData sd = j_spectrum(a, tol);
      bool spectral01 = true;
      for (double vv : sd.values)
        if (vv > 1e-9 && vv < 1.0 - 1e-9) spectral01 = false;
      auto rep = double_sphere_test(a, tol, sub, 25);
      CHECK(rep.projection == spectral01);
      if (!rep.projection) {
        REQUIRE(rep.falsifier.has_value());
        CHECK(rep.certificate_ok);
      }
    }
  }
}

TEST_CASE("order by spheres: frozen two-by-two case") {
  Algebra m2 = Algebra::matrix(2);
  Rng rng(15);
  Element q = mat2(m2, {1, 0, 0, 0});
  Element p = mat2(m2, {0.5, 0.5, 0.5, 0.5});

  auto same = order_by_spheres(q, q, tol, rng);
  CHECK(same.q_leq_p);

  auto rep = order_by_spheres(q, p, tol, rng);
  CHECK_FALSE(rep.q_leq_p);
  REQUIRE(rep.falsifier.has_value());
  CHECK(rep.falsifier_dist_p >= 1.0 - 1e-9);
  CHECK(rep.falsifier_dist_q <= rep.falsifier_bound + tol.eq_tol);
  CHECK(rep.falsifier_dist_q < 1.0 - tol.eq_tol);
  CHECK(classify_positive(*rep.falsifier, tol).invertible);
}

TEST_CASE("order by spheres: complement-meet branch reaches one half exactly") {
  // q has a part under p's complement, so the falsifier (1 + p'^q)/2 sits at
  // distance exactly 1/2 from q.
  Algebra m3 = Algebra::matrix(3);
  Rng rng(16);
  Vector vp = Vector::Zero(9), vq = Vector::Zero(9);
  vp[0] = vp[4] = 1;
  vq[4] = vq[8] = 1;
  auto rep = order_by_spheres(Element(m3, vq), Element(m3, vp), tol, rng, 10);
  CHECK_FALSE(rep.q_leq_p);
  CHECK(rep.falsifier_bound == doctest::Approx(0.5));
  CHECK(rep.falsifier_dist_p == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.falsifier_dist_q == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("order by spheres on random pairs") {
  Rng rng(17);
  for (const Algebra& alg : {Algebra::matrix(3), Algebra::spin(4), Algebra::h3o()}) {
    INFO(alg.to_string());
    for (int i = 0; i < 15; ++i) {
      Rng sub = rng.substream(i);
      Element p = random_projection(alg, sub, tol, {false, false});
      // True instance: a subprojection.
      Element q = random_subprojection(p, sub, tol, false, true);
      auto rep = order_by_spheres(q, p, tol, sub, 10);
      CHECK(rep.q_leq_p);

      // False instance: something with mass outside p, if available.
      Element r = random_projection(alg, sub, tol, {false, false});
      bool below = (jordan_product(p, r) - r).coord_norm() <= tol.residual_tol;
      if (!below) {
        auto rep2 = order_by_spheres(r, p, tol, sub, 10);
        CHECK_FALSE(rep2.q_leq_p);
        REQUIRE(rep2.falsifier.has_value());
        CHECK(rep2.falsifier_dist_p >= 1.0 - 1e-7);
        CHECK(rep2.falsifier_dist_q <= rep2.falsifier_bound + 1e-7);
        auto cls = classify_positive(*rep2.falsifier, tol);
        CHECK(cls.positive);
        CHECK(cls.invertible);
        CHECK(cls.norm == doctest::Approx(1.0).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("invertibility by distance to the unit") {
  Algebra m2 = Algebra::matrix(2);
  CHECK(invertible_by_distance(Element::unit(m2), tol));
  CHECK_FALSE(invertible_by_distance(mat2(m2, {1, 0, 0, 0}), tol));
  CHECK(invertible_by_distance(mat2(m2, {1, 0, 0, 0.2}), tol));

  Rng rng(19);
  for (const Algebra& alg : standard_models()) {
    for (int i = 0; i < 20; ++i) {
      Element a = random_positive_sphere(alg, rng, tol);
      // Never throws: both invertibility routes agree.
      (void)invertible_by_distance(a, tol);
    }
  }
}

TEST_CASE("unit characterization") {
  Rng rng(21);
  Algebra sum = Algebra::parse("sum:mat:2,mat:2");
  Element one = Element::unit(sum);

  auto u = unit_characterization(one, 30, tol, rng);
  CHECK(u.is_unit);
  CHECK(u.all_covered);
  for (const auto& s : u.cover) {
    CHECK(s.midpoint_dist_one <= 0.5 + 1e-9);
    CHECK(s.midpoint_dist_a <= 0.5 + 1e-9);
  }

  Element block = Element::embed(sum, 0, Element::unit(Algebra::matrix(2)));
  auto c = unit_characterization(block, 30, tol, rng);
  CHECK_FALSE(c.is_unit);
  CHECK(c.all_covered);

  CHECK_THROWS_AS(unit_characterization(Element::zero(sum), 5, tol, rng),
                  PreconditionError);
  // Non-central projections are rejected.
  Element e11 = Element::embed(sum, 0, mat2(Algebra::matrix(2), {1, 0, 0, 0}));
  CHECK_THROWS_AS(unit_characterization(e11, 5, tol, rng), PreconditionError);

  // Midpoint example frozen from the characterization: a = diag(1,0) gives
  // c = diag(1, 1/2) at distance exactly 1/2 from both ends.
  Algebra m2 = Algebra::matrix(2);
  Element a = mat2(m2, {1, 0, 0, 0});
  Element mid = 0.5 * (Element::unit(m2) + a);
  CHECK(dist(mid, mat2(m2, {1, 0, 0, 0.5})) < 1e-15);
  CHECK(op_distance(mid, Element::unit(m2), tol) == doctest::Approx(0.5));
  CHECK(op_distance(mid, a, tol) == doctest::Approx(0.5));
}

TEST_CASE("orthogonality by corner spheres") {
  Rng rng(23);
  for (const Algebra& alg : {Algebra::matrix(4), Algebra::spin(5)}) {
    INFO(alg.to_string());
    // Orthogonal pair: all sampled corner-sphere distances are one.
    Element p = random_projection(alg, rng, tol, {false, false});
    Element comp = Element::unit(alg) - p;
    if (comp.coord_norm() > 1e-9) {
      Element q = random_subprojection(comp, rng, tol, false, true);
      auto ev = orthogonality_by_corner_spheres(p, q, tol, rng);
      CHECK(ev.orthogonal);
      CHECK(ev.sampled_pairs > 0);
      CHECK(ev.min_sampled_distance >= 1.0 - tol.eq_tol);
    }
  }

  // Non-orthogonal pair with interior spectrum: the scaled pair comes close.
  Algebra m2 = Algebra::matrix(2);
  Element p = mat2(m2, {1, 0, 0, 0});
  Element q = mat2(m2, {0.5, 0.5, 0.5, 0.5});
  auto ev = orthogonality_by_corner_spheres(p, q, tol, rng);
  CHECK_FALSE(ev.orthogonal);
  REQUIRE(ev.close_pair.has_value());
  CHECK(ev.close_distance <= std::sqrt(1.0 - ev.delta) + tol.eq_tol);
  CHECK(ev.close_distance < 1.0);
  // Both sides really are corner elements of their projections.
  CHECK(dist(u_operator(p, ev.close_pair->first), ev.close_pair->first) < 1e-9);
  CHECK(dist(u_operator(q, ev.close_pair->second), ev.close_pair->second) < 1e-9);
}
