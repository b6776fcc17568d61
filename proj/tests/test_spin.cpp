#include "test_util.hpp"

#include "jbstar/projections.hpp"
#include "jbstar/spin.hpp"

using namespace jt;

namespace {

const Tolerances tol;

Eigen::VectorXd unit_vec(int d, Rng& rng) {
  Eigen::VectorXd b(d);
  for (int i = 0; i < d; ++i) b[i] = rng.gaussian();
  return b / b.norm();
}

}  // namespace

TEST_CASE("upsilon round trips") {
  Algebra s3 = Algebra::spin(3);
  // p = (e1 + i e2)/2  ->  e2.
  Vector v(3);
  v[0] = 0.5;
  v[1] = Complex(0, 0.5);
  v[2] = 0;
  SpinProjection p = decompose_spin_projection(Element(s3, v), tol);
  REQUIRE(p.kind == SpinProjection::Kind::Minimal);
  CHECK(upsilon(p)[0] == doctest::Approx(1.0));
  CHECK(upsilon(p)[1] == doctest::Approx(0.0));

  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXd b = unit_vec(4, rng);
    SpinProjection q = upsilon_inv(b, tol);
    CHECK((upsilon(q) - b).norm() < 1e-12);
    // The parametrized element is a genuine norm-one projection.
    Element e = spin_projection_element(Algebra::spin(5), q);
    CHECK(is_projection(e, tol));
    CHECK(op_norm(e, tol) == doctest::Approx(1.0).epsilon(1e-12));
  }

  CHECK_THROWS_AS(upsilon(SpinProjection::unit()), PreconditionError);
  Eigen::VectorXd bad(4);
  bad << 1, 1, 0, 0;
  CHECK_THROWS_AS(upsilon_inv(bad, tol), PreconditionError);
}

TEST_CASE("minimal projection distance formula") {
  Rng rng(4);
  for (int n = 3; n <= 8; ++n) {
    Algebra sp = Algebra::spin(n);
    for (int i = 0; i < 200; ++i) {
      SpinProjection p = upsilon_inv(unit_vec(n - 1, rng), tol);
      SpinProjection q = upsilon_inv(unit_vec(n - 1, rng), tol);
      double by_formula = min_proj_distance(p, q);
      double by_spectrum = op_distance(spin_projection_element(sp, p),
                                       spin_projection_element(sp, q), tol);
      CHECK(std::abs(by_formula - by_spectrum) <= 1e-12);
    }
    // Extremes: antipodal = complement at distance one, equality at zero.
    SpinProjection p = upsilon_inv(unit_vec(n - 1, rng), tol);
    SpinProjection anti = upsilon_inv(Eigen::VectorXd(-p.b), tol);
    CHECK(min_proj_distance(p, anti) == doctest::Approx(1.0));
    Element pe = spin_projection_element(sp, p);
    CHECK(dist(spin_projection_element(sp, anti), Element::unit(sp) - pe) < 1e-12);
    CHECK(min_proj_distance(p, p) == doctest::Approx(0.0));
  }
}

TEST_CASE("sqrt(2)/2 distance is orthogonality of the parameters") {
  Rng rng(6);
  for (int i = 0; i < 500; ++i) {
    int n = 3 + static_cast<int>(rng.integer(6));
    // Construct an exactly orthogonal pair.
    Eigen::VectorXd b = unit_vec(n - 1, rng);
    Eigen::VectorXd c0 = unit_vec(n - 1, rng);
    Eigen::VectorXd c = (c0 - c0.dot(b) * b);
    if (c.norm() < 1e-6) continue;
    c /= c.norm();
    double d = min_proj_distance(upsilon_inv(b, tol), upsilon_inv(c, tol));
    CHECK(std::abs(d - std::sqrt(2.0) / 2.0) <= 1e-12);

    // And the converse: distance sqrt(2)/2 forces orthogonal parameters.
    Eigen::VectorXd c2 = unit_vec(n - 1, rng);
    double d2 = min_proj_distance(upsilon_inv(b, tol), upsilon_inv(c2, tol));
    if (std::abs(d2 - std::sqrt(2.0) / 2.0) <= 1e-12)
      CHECK(std::abs(b.dot(c2)) <= 1e-10);
  }
}

TEST_CASE("spin factor embeds into matrices: product, involution, norm") {
  // spin:5 realized inside mat:4 by four anticommuting hermitian
  // involutions; i e_j maps to gamma_j. The embedding must be a Jordan
  // *-homomorphism and the closed-form norm must match the operator norm of
  // the image, self-adjoint or not.
  Algebra s5 = Algebra::spin(5);
  Algebra m4 = Algebra::matrix(4);
  Matrix sx(2, 2), sy(2, 2), sz(2, 2), id2 = Matrix::Identity(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  auto kron = [](const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  };
  std::vector<Matrix> gamma{kron(sx, id2), kron(sy, id2), kron(sz, sx), kron(sz, sy)};
  auto embed = [&](const Element& x) {
    Matrix out = x.coords()[0] * Matrix::Identity(4, 4);
    for (int j = 0; j < 4; ++j) out += Complex(0, -1) * x.coords()[j + 1] * gamma[j];
    return out;
  };

  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    Element a = random_element(s5, rng);
    Element b = random_element(s5, rng);
    Matrix A = embed(a), B = embed(b);
    CHECK((embed(jordan_product(a, b)) - 0.5 * (A * B + B * A)).norm() < 1e-10);
    CHECK((embed(involution(a)) - A.adjoint()).norm() < 1e-10);
    double cstar_norm = op_norm(from_matrix(m4, A), tol);
    CHECK(std::abs(op_norm(a, tol) - cstar_norm) < 1e-10);
  }
}

TEST_CASE("hemisphere counterexample: order and diametrical preservation") {
  SpinProjectionMap theta = counterexample_theta(99);
  Rng rng(8);

  CHECK(theta.map(SpinProjection::zero()).kind == SpinProjection::Kind::Zero);
  CHECK(theta.map(SpinProjection::unit()).kind == SpinProjection::Kind::Unit);

  int sqrt2_violation = -1;
  for (int i = 0; i < 1000; ++i) {
    Eigen::VectorXd b = unit_vec(2, rng);
    SpinProjection p = upsilon_inv(b, tol);
    SpinProjection q = upsilon_inv(Eigen::VectorXd(-b), tol);

    SpinProjection tp = theta.map(p), tq = theta.map(q);
    REQUIRE(tp.kind == SpinProjection::Kind::Minimal);
    // Diametrical pairs map to diametrical pairs, exactly.
    CHECK((tp.b + tq.b).norm() == doctest::Approx(0.0));
    // Repeated queries are stable (memoized).
    CHECK((theta.map(p).b - tp.b).norm() == doctest::Approx(0.0));

    // Search for a sqrt(2)/2-preservation violation: orthogonal parameters
    // whose images are far from orthogonal.
    Eigen::VectorXd c(2);
    c << -b[1], b[0];
    SpinProjection r = upsilon_inv(c, tol);
    double after = theta.map(p).b.dot(theta.map(r).b);
    if (std::abs(after) > 0.01 && sqrt2_violation < 0) sqrt2_violation = i;
  }
  CHECK(sqrt2_violation >= 0);
  CHECK(sqrt2_violation < 1000);
}

TEST_CASE("sphere isometry extension") {
  Rng rng(10);
  Tolerances tt;

  auto id = [](const Eigen::VectorXd& x) { return x; };
  Eigen::MatrixXd I = sphere_isometry_extension(id, 4, tt, rng);
  CHECK((I - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-12);

  auto neg = [](const Eigen::VectorXd& x) { return Eigen::VectorXd(-x); };
  Eigen::MatrixXd N = sphere_isometry_extension(neg, 4, tt, rng);
  CHECK((N + Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-12);

  Eigen::MatrixXd O = random_orthogonal(5, rng);
  auto rot = [&O](const Eigen::VectorXd& x) { return Eigen::VectorXd(O * x); };
  Eigen::MatrixXd R = sphere_isometry_extension(rot, 5, tt, rng);
  CHECK((R - O).norm() < 1e-10);

  // A non-isometry is refused with the worst witness attached.
  auto broken = [](const Eigen::VectorXd& x) {
    Eigen::VectorXd y = x;
    y[0] = std::abs(y[0]) + 0.1;
    return Eigen::VectorXd(y / y.norm());
  };
  CHECK_THROWS_AS(sphere_isometry_extension(broken, 3, tt, rng), VerificationFailure);
}

TEST_CASE("jordan iso from a rotation-induced theta") {
  Rng rng(12);
  Algebra s5 = Algebra::spin(5);

  // Identity theta extends to the identity.
  SpinProjectionMap id_theta(s5, s5, [](const SpinProjection& p) { return p; });
  JordanMap phi = jordan_iso_from_theta(id_theta, tol, rng);
  CHECK((phi.matrix - Matrix::Identity(5, 5)).norm() < 1e-12);

  // Theta induced by a hidden rotation is recovered with small residuals.
  Eigen::MatrixXd O = random_orthogonal(4, rng);
  SpinProjectionMap rot_theta(s5, s5, [O](const SpinProjection& p) {
    if (p.kind != SpinProjection::Kind::Minimal) return p;
    return SpinProjection::minimal(O * p.b);
  });
  JordanMap phi2 = jordan_iso_from_theta(rot_theta, tol, rng);
  Rng vr(13);
  auto res = verify_jordan_map(phi2, 50, tol, vr);
  CHECK(res.multiplicativity < 1e-9);
  CHECK(res.involution < 1e-9);
  CHECK(res.isometry < 1e-9);
  CHECK((phi2.matrix.block(1, 1, 4, 4).real() - O).norm() < 1e-10);

  // Projections map through theta.
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXd b(4);
    for (int k = 0; k < 4; ++k) b[k] = vr.gaussian();
    b /= b.norm();
    Element p = spin_projection_element(s5, SpinProjection::minimal(b));
    CHECK(dist(phi2.apply(p), rot_theta.map_element(p, tol)) < 1e-10);
  }

  // The counterexample map is rejected on dimension grounds.
  SpinProjectionMap theta = counterexample_theta(5);
  CHECK_THROWS_AS(jordan_iso_from_theta(theta, tol, rng), DescriptorMismatch);
}
