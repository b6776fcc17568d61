#include "test_util.hpp"

#include "jbstar/projections.hpp"

using namespace jt;

namespace {
const Tolerances tol;
}

TEST_CASE("is_projection basics") {
  for (const Algebra& alg : standard_models()) {
    CHECK(is_projection(Element::unit(alg), tol));
    CHECK(is_projection(Element::zero(alg), tol));
  }
  Algebra m2 = Algebra::matrix(2);
  CHECK_FALSE(is_projection(mat2(m2, {1, 0, 0, 0.5}), tol));

  // Spin: (e1 + i b)/2 with b a real unit vector orthogonal to e1.
  Algebra s4 = Algebra::spin(4);
  Rng rng(2);
  Eigen::VectorXd b(3);
  for (int i = 0; i < 3; ++i) b[i] = rng.gaussian();
  b /= b.norm();
  Vector v(4);
  v[0] = 0.5;
  for (int i = 1; i < 4; ++i) v[i] = Complex(0, 0.5 * b[i - 1]);
  CHECK(is_projection(Element(s4, v), tol));
}

TEST_CASE("lattice joins and meets") {
  Algebra m2 = Algebra::matrix(2);
  Element one = Element::unit(m2);
  Element p = mat2(m2, {1, 0, 0, 0});

  auto lp = lattice(p, one - p, tol);
  CHECK(dist(lp.join, one) < 1e-9);
  CHECK(lp.meet.coord_norm() < 1e-9);

  Element q = mat2(m2, {0.5, 0.5, 0.5, 0.5});
  auto lq = lattice(p, q, tol);
  CHECK(dist(lq.join, one) < 1e-9);     // two distinct rank ones span
  CHECK(lq.meet.coord_norm() < 1e-9);

  auto lself = lattice(p, p, tol);
  CHECK(dist(lself.join, p) < 1e-9);
  CHECK(dist(lself.meet, p) < 1e-9);

  CHECK_THROWS_AS(lattice(p, mat2(m2, {1, 0, 0, 0.5}), tol), NotProjection);
}

TEST_CASE("lattice absorption and De Morgan on random pairs") {
  Rng rng(4);
  for (const Algebra& alg : {Algebra::matrix(3), Algebra::spin(4), Algebra::h3o()}) {
    INFO(alg.to_string());
    int pairs = alg.kind() == Kind::OctonionHermitian3 ? 25 : 100;
    for (int i = 0; i < pairs; ++i) {
      Rng sub = rng.substream(i);
      Element p = random_projection(alg, sub, tol);
      Element q = random_projection(alg, sub, tol);
      auto l = lattice(p, q, tol);
      // p ^ (p v q) = p and p v (p ^ q) = p.
      CHECK(dist(lattice(p, l.join, tol).meet, p) < 1e-8);
      CHECK(dist(lattice(p, l.meet, tol).join, p) < 1e-8);
      // (p v q)^perp = p^perp ^ q^perp, exact by construction.
      Element one = Element::unit(alg);
      CHECK(dist(one - l.join, lattice(one - p, one - q, tol).meet) < 1e-12);
    }
  }
}

TEST_CASE("orthogonality and the max-norm law") {
  Algebra m2 = Algebra::matrix(2);
  Element one = Element::unit(m2);
  Element p = mat2(m2, {1, 0, 0, 0});
  CHECK(is_orthogonal(p, one - p, tol));
  CHECK(is_orthogonal(p, Element::zero(m2), tol));
  CHECK_FALSE(is_orthogonal(p, mat2(m2, {0.5, 0.5, 0.5, 0.5}), tol));

  Rng rng(6);
  for (const Algebra& alg : {Algebra::matrix(4), Algebra::spin(5)}) {
    for (int i = 0; i < 25; ++i) {
      Element p1 = random_projection(alg, rng, tol, {false, false});
      Element comp = Element::unit(alg) - p1;
      if (comp.coord_norm() < 1e-9) continue;
      Element q1 = random_subprojection(comp, rng, tol, true, true);
      if (q1.coord_norm() < 1e-9) continue;
      REQUIRE(is_orthogonal(p1, q1, tol));
      CHECK(op_distance(p1, q1, tol) ==
            doctest::Approx(std::max(op_norm(p1, tol), op_norm(q1, tol))).epsilon(1e-9));
    }
  }
}

TEST_CASE("Peirce decomposition") {
  Algebra m2 = Algebra::matrix(2);
  Element p = mat2(m2, {1, 0, 0, 0});

  auto parts = peirce_decompose(p, p, tol);
  CHECK(dist(parts.part2, p) < 1e-12);
  CHECK(parts.part1.coord_norm() < 1e-12);
  CHECK(parts.part0.coord_norm() < 1e-12);

  Element h = mat2(m2, {0.5, 0.5, 0.5, 0.5});
  auto ph = peirce_decompose(h, p, tol);
  CHECK(dist(ph.part2, mat2(m2, {0.5, 0, 0, 0})) < 1e-12);
  CHECK(dist(ph.part0, mat2(m2, {0, 0, 0, 0.5})) < 1e-12);
  CHECK(dist(ph.part2 + ph.part1 + ph.part0, h) < 1e-15);

  // Positive norm-one a with U_p(a) = p has no mixed part.
  Rng rng(8);
  for (const Algebra& alg : standard_models()) {
    Element q = random_projection(alg, rng, tol, {false, false});
    Element x = u_operator(Element::unit(alg) - q,
                           random_positive_sphere(alg, rng, tol));
    double nx = op_norm(x, tol);
    Element a = q + (nx > 1e-12 ? 0.7 / nx * x : Element::zero(alg));
    auto pa = peirce_decompose(a, q, tol);
    CHECK(dist(pa.part2, q) < 1e-9);
    CHECK(pa.part1.coord_norm() < 1e-9);
  }
}

TEST_CASE("centrality: algebraic decision with metric evidence") {
  Rng rng(10);
  Algebra m2 = Algebra::matrix(2);

  auto rep_one = is_central(Element::unit(m2), tol, rng);
  CHECK(rep_one.central);
  auto rep_zero = is_central(Element::zero(m2), tol, rng);
  CHECK(rep_zero.central);

  auto rep = is_central(mat2(m2, {1, 0, 0, 0}), tol, rng);
  CHECK_FALSE(rep.central);
  REQUIRE(rep.witness.has_value());
  CHECK(is_projection(*rep.witness, tol));
  CHECK(rep.witness_distance > 0);
  CHECK(rep.witness_distance < 1.0);

  // Block units of a direct sum are central; their isolation is sampled.
  Algebra sum = Algebra::parse("sum:mat:2,spin:3");
  Element u0 = Element::embed(sum, 0, Element::unit(Algebra::matrix(2)));
  auto rep_block = is_central(u0, tol, rng);
  CHECK(rep_block.central);
  CHECK(rep_block.isolation_samples_checked > 0);
}

TEST_CASE("central projections in a direct sum are exactly block-unit sums") {
  Algebra sum = Algebra::parse("sum:mat:2,mat:2,spin:3");
  Rng rng(12);
  // All 2^3 block-unit combinations are central.
  for (int mask = 0; mask < 8; ++mask) {
    Element p = Element::zero(sum);
    for (int b = 0; b < 3; ++b)
      if (mask & (1 << b))
        p = p + Element::embed(sum, b, Element::unit(sum.summands()[b]));
    CHECK(is_central(p, tol, rng, 10).central);
  }
  // Projections with a proper block part are not.
  Element e11 = mat2(Algebra::matrix(2), {1, 0, 0, 0});
  Element p = Element::embed(sum, 0, e11);
  CHECK_FALSE(is_central(p, tol, rng, 10).central);
}

TEST_CASE("abelian projections") {
  Rng rng(14);
  Algebra m3 = Algebra::matrix(3);

  // Rank-one projections are abelian (U_p(A) = C p).
  Matrix U = random_unitary(3, rng);
  Matrix D = Matrix::Zero(3, 3);
  D(0, 0) = 1;
  Element rank1 = from_matrix(m3, U * D * U.adjoint());
  auto rep1 = is_abelian(rank1, tol, rng, 20);
  CHECK(rep1.abelian);
  CHECK(rep1.distance_samples_checked > 0);

  // The unit of Matrix(2) is not; the witness pair sits strictly between 0 and 1.
  Algebra m2 = Algebra::matrix(2);
  auto rep2 = is_abelian(Element::unit(m2), tol, rng, 20);
  CHECK_FALSE(rep2.abelian);
  REQUIRE(rep2.witness.has_value());
  CHECK(rep2.witness_distance > 1e-9);
  CHECK(rep2.witness_distance < 1.0 - 1e-9);

  // Minimal spin projections are abelian; the whole spin factor is not.
  Algebra s5 = Algebra::spin(5);
  Element ms = random_projection(s5, rng, tol, {false, false});
  CHECK(is_abelian(ms, tol, rng, 20).abelian);
  auto spin_unit = is_abelian(Element::unit(s5), tol, rng, 20);
  CHECK_FALSE(spin_unit.abelian);
  REQUIRE(spin_unit.witness.has_value());
  CHECK(spin_unit.witness_distance > 1e-9);
  CHECK(spin_unit.witness_distance < 1.0 - 1e-9);

  // The one-dimensional model is trivially abelian.
  CHECK(is_abelian(Element::unit(Algebra::matrix(1)), tol, rng, 5).abelian);
}

TEST_CASE("spin projections decompose as the parametrized family") {
  Algebra s5 = Algebra::spin(5);
  Rng rng(16);
  for (int i = 0; i < 100; ++i) {
    Element p = random_projection(s5, rng, tol, {true, true});
    double a0 = p.coords()[0].real();
    if (p.coord_norm() <= tol.eq_tol) continue;                       // zero
    if (dist(p, Element::unit(s5)) <= tol.eq_tol) continue;           // unit
    // Otherwise (e1 + i b)/2 with b real unit: first coordinate 1/2, the
    // tail purely imaginary of length 1/2.
    CHECK(a0 == doctest::Approx(0.5));
    double tail = 0;
    for (int j = 1; j < 5; ++j) {
      CHECK(std::abs(p.coords()[j].real()) < 1e-9);
      tail += p.coords()[j].imag() * p.coords()[j].imag();
    }
    CHECK(std::sqrt(tail) == doctest::Approx(0.5));
  }
}

TEST_CASE("subprojection sampling stays below the given projection") {
  Rng rng(18);
  for (const Algebra& alg : {Algebra::matrix(4), Algebra::h3o()}) {
    Element p = random_projection(alg, rng, tol, {false, false});
    for (int i = 0; i < 20; ++i) {
      Element r = random_subprojection(p, rng, tol);
      CHECK(is_projection(r, tol));
      CHECK(dist(jordan_product(r, p), r) < 1e-8);
    }
  }
}
