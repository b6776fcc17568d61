#include "test_util.hpp"

#include "jbstar/octonion.hpp"

#include <Eigen/Eigenvalues>

using namespace jt;

TEST_CASE("diagonal matrix spectrum with multiplicity") {
  Algebra m3 = Algebra::matrix(3);
  Vector v = Vector::Zero(9);
  v[0] = 3; v[4] = 1; v[8] = 1;
  SpectralData sd = j_spectrum(Element(m3, v));
  REQUIRE(sd.values.size() == 2);
  CHECK(sd.values[0] == doctest::Approx(1.0));
  CHECK(sd.values[1] == doctest::Approx(3.0));
  CHECK(sd.multiplicities[0] == 2);
  CHECK(sd.multiplicities[1] == 1);
}

TEST_CASE("spin quadratic spectrum") {
  // alpha = 0.75, w = 0.25 e2: roots alpha -+ ||w|| = {0.5, 1.0}.
  Algebra s3 = Algebra::spin(3);
  Vector v = Vector::Zero(3);
  v[0] = 0.75;
  v[1] = Complex(0, 0.25);
  SpectralData sd = j_spectrum(Element(s3, v));
  REQUIRE(sd.values.size() == 2);
  CHECK(sd.values[0] == doctest::Approx(0.5));
  CHECK(sd.values[1] == doctest::Approx(1.0));

  // The quadratic minimal polynomial a^2 - 2 alpha a + (alpha^2 - ||w||^2) 1
  // vanishes (independent route to the same roots).
  Element a(s3, v);
  Element res = jordan_product(a, a) - 1.5 * a +
                (0.75 * 0.75 - 0.25 * 0.25) * Element::unit(s3);
  CHECK(res.coord_norm() < 1e-15);
}

TEST_CASE("non-self-adjoint input is rejected") {
  Algebra m2 = Algebra::matrix(2);
  Element n = mat2(m2, {0, 1, 0, 0});
  CHECK_THROWS_AS(j_spectrum(n), NotSelfAdjoint);
}

TEST_CASE("spectral reconstruction and projection properties, all models") {
  Tolerances tol;
  Rng rng(31);
  for (const Algebra& alg : standard_models()) {
    INFO(alg.to_string());
    for (int i = 0; i < 100; ++i) {
      Element a = random_self_adjoint(alg, rng);
      SpectralData sd = j_spectrum(a, tol);
      CHECK(static_cast<int>(sd.eigenvalues.size()) == alg.rank());

      Element recon = Element::zero(alg);
      Element psum = Element::zero(alg);
      for (std::size_t k = 0; k < sd.values.size(); ++k) {
        recon = recon + sd.values[k] * sd.projections[k];
        psum = psum + sd.projections[k];
        // Idempotent and self-adjoint.
        CHECK(dist(jordan_product(sd.projections[k], sd.projections[k]),
                   sd.projections[k]) < 1e-9);
        // Mutually orthogonal.
        for (std::size_t l = 0; l < k; ++l)
          CHECK(jordan_product(sd.projections[k], sd.projections[l]).coord_norm() < 1e-9);
      }
      double scale = std::max(1.0, a.coord_norm());
      CHECK(dist(recon, a) / scale < 1e-9);
      CHECK(dist(psum, Element::unit(alg)) < 1e-9);
    }
  }
}

TEST_CASE("functional calculus basics") {
  Tolerances tol;
  Algebra m2 = Algebra::matrix(2);
  Element d41 = mat2(m2, {4, 0, 0, 1});
  Element sq = functional_calculus(d41, [](double t) { return std::sqrt(t); }, tol);
  CHECK(dist(sq, mat2(m2, {2, 0, 0, 1})) < 1e-12);

  Rng rng(33);
  for (const Algebra& alg : standard_models()) {
    Element a = random_self_adjoint(alg, rng);
    CHECK(dist(functional_calculus(a, [](double t) { return t; }, tol), a) < 1e-8);
  }

  // f = t^2 against the Jordan square on a spin element.
  Algebra s5 = Algebra::spin(5);
  Element a = random_self_adjoint(s5, rng);
  CHECK(dist(functional_calculus(a, [](double t) { return t * t; }, tol),
             jordan_product(a, a)) < 1e-10);
}

TEST_CASE("power associativity against the calculus") {
  Tolerances tol;
  Rng rng(35);
  for (const Algebra& alg : standard_models()) {
    Element a = random_self_adjoint(alg, rng);
    for (int n : {2, 3, 5}) {
      Element lhs = power(a, n);
      Element rhs = functional_calculus(a, [n](double t) { return std::pow(t, n); }, tol);
      double scale = std::pow(std::max(1.0, op_norm(a, tol)), n);
      CHECK(dist(lhs, rhs) / scale < 1e-8);
    }
  }
}

TEST_CASE("classify_positive and the distance-to-unit criterion") {
  Tolerances tol;
  Algebra m2 = Algebra::matrix(2);

  auto r1 = classify_positive(mat2(m2, {1, 0, 0, 0.5}), tol);
  CHECK(r1.positive);
  CHECK(r1.invertible);
  CHECK(r1.norm == doctest::Approx(1.0));
  CHECK(op_distance(mat2(m2, {1, 0, 0, 0.5}), Element::unit(m2)) == doctest::Approx(0.5));

  auto r2 = classify_positive(mat2(m2, {1, 0, 0, 0}), tol);
  CHECK(r2.positive);
  CHECK_FALSE(r2.invertible);
  // || a - 1 || = 1 exactly at the invertibility boundary.
  CHECK(op_distance(mat2(m2, {1, 0, 0, 0}), Element::unit(m2)) == doctest::Approx(1.0));

  Algebra s3 = Algebra::spin(3);
  Vector v = Vector::Zero(3);
  v[0] = 0.75; v[1] = Complex(0, 0.25);
  auto r3 = classify_positive(Element(s3, v), tol);
  CHECK(r3.positive);
  CHECK(r3.invertible);
  CHECK(r3.norm == doctest::Approx(1.0));
}

TEST_CASE("range projection") {
  Tolerances tol;
  Algebra m2 = Algebra::matrix(2);
  CHECK(dist(range_projection(mat2(m2, {0.5, 0, 0, 0})), mat2(m2, {1, 0, 0, 0})) < 1e-12);

  Rng rng(37);
  for (const Algebra& alg : standard_models()) {
    Element a = random_positive_sphere_invertible(alg, rng, tol);
    CHECK(dist(range_projection(a, tol), Element::unit(alg)) < 1e-9);
    // r(a) o a = a.
    Element b = random_positive_sphere(alg, rng, tol);
    Element r = range_projection(b, tol);
    CHECK(dist(jordan_product(r, b), b) < 1e-8);
  }
}

TEST_CASE("operator norm laws") {
  Tolerances tol;
  Rng rng(39);
  for (const Algebra& alg : standard_models()) {
    for (int i = 0; i < 25; ++i) {
      Element a = random_self_adjoint(alg, rng);
      SpectralData sd = j_spectrum(a, tol);
      double expec = std::max(std::abs(sd.min()), std::abs(sd.max()));
      CHECK(op_norm(a, tol) == doctest::Approx(expec).epsilon(1e-10));
      CHECK(op_norm(jordan_product(a, a), tol) ==
            doctest::Approx(op_norm(a, tol) * op_norm(a, tol)).epsilon(1e-9));
    }
  }
}

TEST_CASE("spin norm closed form matches |alpha| + ||w|| on self-adjoints") {
  Tolerances tol;
  Algebra s6 = Algebra::spin(6);
  Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    Element a = random_self_adjoint(s6, rng);
    double alpha = a.coords()[0].real();
    double w = 0;
    for (int j = 1; j < 6; ++j) w += a.coords()[j].imag() * a.coords()[j].imag();
    w = std::sqrt(w);
    CHECK(std::abs(op_norm(a, tol) - (std::abs(alpha) + w)) < 1e-12);
  }
}

TEST_CASE("cubic model multiplication-operator spectral oracle") {
  // Eigenvalues of M_a on the real form are {l_i} u {(l_i + l_j)/2}, the
  // latter with multiplicity 8: an independent check of the cubic-root path.
  Algebra h3 = Algebra::h3o();
  Rng rng(43);
  for (int i = 0; i < 100; ++i) {
    Element a = random_self_adjoint(h3, rng);
    auto roots = h3_cubic_spectrum(a.coords());
    Eigen::MatrixXd M = h3_multiplication_operator(a.coords());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);

    std::vector<double> expect;
    for (int k = 0; k < 3; ++k) expect.push_back(roots[k]);
    for (int k = 0; k < 3; ++k)
      for (int l = k + 1; l < 3; ++l)
        for (int rep = 0; rep < 8; ++rep) expect.push_back(0.5 * (roots[k] + roots[l]));
    std::sort(expect.begin(), expect.end());

    double scale = std::max(1.0, std::abs(roots[0]) + std::abs(roots[2]));
    for (int k = 0; k < 27; ++k)
      CHECK(std::abs(es.eigenvalues()[k] - expect[k]) < 1e-9 * scale);
  }
}

TEST_CASE("direct sum spectra merge blockwise") {
  Tolerances tol;
  Algebra sum = Algebra::direct_sum({Algebra::matrix(2), Algebra::spin(3)});
  Rng rng(45);
  Element a = random_self_adjoint(sum, rng);
  SpectralData sd = j_spectrum(a, tol);
  CHECK(sd.eigenvalues.size() == 4);  // rank 2 + 2

  SpectralData s0 = j_spectrum(a.block(0), tol);
  SpectralData s1 = j_spectrum(a.block(1), tol);
  std::vector<double> merged = s0.eigenvalues;
  merged.insert(merged.end(), s1.eigenvalues.begin(), s1.eigenvalues.end());
  std::sort(merged.begin(), merged.end());
  for (int i = 0; i < 4; ++i) CHECK(sd.eigenvalues[i] == doctest::Approx(merged[i]));
}
