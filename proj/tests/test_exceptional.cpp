#include "test_util.hpp"

#include "jbstar/exceptional.hpp"

using namespace jt;

namespace {
const Tolerances tol;
}

TEST_CASE("Glennie identity vanishes on special models") {
  Rng rng(3);
  for (const Algebra& alg :
       {Algebra::matrix(3), Algebra::spin(6), Algebra::parse("sum:mat:2,spin:4")}) {
    INFO(alg.to_string());
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
      Element x = random_box_self_adjoint(alg, rng);
      Element y = random_box_self_adjoint(alg, rng);
      Element z = random_box_self_adjoint(alg, rng);
      worst = std::max(worst, op_norm(glennie_eval(x, y, z), tol));
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("Glennie output is self-adjoint for self-adjoint inputs") {
  Rng rng(5);
  Algebra h3 = Algebra::h3o();
  for (int i = 0; i < 10; ++i) {
    Element g = glennie_eval(random_box_self_adjoint(h3, rng),
                             random_box_self_adjoint(h3, rng),
                             random_box_self_adjoint(h3, rng));
    CHECK(is_self_adjoint(g, tol));
  }
}

TEST_CASE("single-generator triples vanish even in the cubic model") {
  // The subalgebra generated by one element is associative, hence special.
  Rng rng(7);
  Algebra h3 = Algebra::h3o();
  for (int i = 0; i < 20; ++i) {
    Element x = random_box_self_adjoint(h3, rng);
    CHECK(op_norm(glennie_eval(x, x, x), tol) <= 1e-10);
  }
}

TEST_CASE("violation search finds a witness in the cubic model") {
  Algebra h3 = Algebra::h3o();
  Rng rng(11);
  auto res = glennie_violation_search(h3, rng, 10000, 1e-3, tol);
  CHECK(res.found);
  CHECK(res.norm > 1e-3);
  // Reproducible: evaluating the returned triple gives the recorded norm.
  CHECK(op_norm(glennie_eval(res.x, res.y, res.z), tol) ==
        doctest::Approx(res.norm).epsilon(1e-12));
  MESSAGE("violation found at trial ", res.trials_used, " with norm ", res.norm);
}

TEST_CASE("violation search on a special model reports failure data") {
  Algebra m3 = Algebra::matrix(3);
  Rng rng(13);
  auto res = glennie_violation_search(m3, rng, 50, 1e-3, tol);
  CHECK_FALSE(res.found);
  CHECK(res.norm <= 1e-10);
  CHECK(res.trials_used == 50);

  // Unreachable threshold: failure flag with the best candidate attached.
  Algebra h3 = Algebra::h3o();
  auto res2 = glennie_violation_search(h3, rng, 25,
                                       std::numeric_limits<double>::infinity(), tol);
  CHECK_FALSE(res2.found);
  CHECK(res2.norm > 0);
}

TEST_CASE("formal reality: cubic discriminants stay non-negative") {
  Algebra h3 = Algebra::h3o();
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    Element a = random_self_adjoint(h3, rng);
    auto inv = h3_cubic_invariants(a.coords());
    double T = inv.trace, S = inv.quadratic_trace, N = inv.determinant;
    double p = S - T * T / 3.0;
    double q = -N + T * S / 3.0 - 2.0 * T * T * T / 27.0;
    double disc = -4 * p * p * p - 27 * q * q;
    double scale = std::max(1.0, std::pow(std::abs(p), 3));
    CHECK(disc >= -1e-9 * scale);
  }
}
