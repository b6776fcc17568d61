#include "jbstar/exceptional.hpp"

namespace jbstar {

namespace {

// F(x,y,z) = 2{x,z,x} o {y,{z,y^2,z},x} - {x,{z,{x,{y,z,y},y},z},x};
// the s-identity is its antisymmetrization in (x, y).
Element glennie_half(const Element& x, const Element& y, const Element& z) {
  Element y2 = jordan_product(y, y);
  Element zy2z = triple_product(z, y2, z);
  Element xzx = triple_product(x, z, x);
  Element yzy = triple_product(y, z, y);
  Element term1 = 2.0 * jordan_product(xzx, triple_product(y, zy2z, x));
  Element term2 =
      triple_product(x, triple_product(z, triple_product(x, yzy, y), z), x);
  return term1 - term2;
}

}  // namespace

Element glennie_eval(const Element& x, const Element& y, const Element& z) {
  require_same_algebra(x, y);
  require_same_algebra(x, z);
  return glennie_half(x, y, z) - glennie_half(y, x, z);
}

Element random_box_self_adjoint(const Algebra& alg, Rng& rng) {
  switch (alg.kind()) {
    case Kind::MatrixAlgebra: {
      int n = alg.size();
      Matrix H(n, n);
      for (int i = 0; i < n; ++i) {
        H(i, i) = rng.uniform(-1.0, 1.0);
        for (int j = i + 1; j < n; ++j) {
          H(i, j) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
          H(j, i) = std::conj(H(i, j));
        }
      }
      return from_matrix(alg, H);
    }
    case Kind::SpinFactor: {
      Vector v(alg.dim());
      v[0] = rng.uniform(-1.0, 1.0);
      for (int i = 1; i < alg.dim(); ++i) v[i] = Complex(0, rng.uniform(-1.0, 1.0));
      return Element(alg, std::move(v));
    }
    case Kind::OctonionHermitian3: {
      Vector v(27);
      for (int i = 0; i < 27; ++i) v[i] = rng.uniform(-1.0, 1.0);
      return Element(alg, std::move(v));
    }
    case Kind::DirectSum: {
      Vector v(alg.dim());
      int off = 0;
      for (const auto& p : alg.summands()) {
        v.segment(off, p.dim()) = random_box_self_adjoint(p, rng).coords();
        off += p.dim();
      }
      return Element(alg, std::move(v));
    }
  }
  throw Error("unreachable");
}

GlennieSearchResult glennie_violation_search(const Algebra& alg, Rng& rng, int trials,
                                             double threshold, const Tolerances& tol) {
  if (trials < 1) throw PreconditionError("glennie_violation_search needs trials >= 1");
  GlennieSearchResult best{false, Element::zero(alg), Element::zero(alg),
                           Element::zero(alg), 0.0, 0};
  for (int k = 0; k < trials; ++k) {
    Rng sub = rng.substream(k);
    Element x = random_box_self_adjoint(alg, sub);
    Element y = random_box_self_adjoint(alg, sub);
    Element z = random_box_self_adjoint(alg, sub);
    double norm = op_norm(glennie_eval(x, y, z), tol);
    best.trials_used = k + 1;
    if (norm > best.norm) {
      best.norm = norm;
      best.x = x;
      best.y = y;
      best.z = z;
    }
    if (norm > threshold) {
      best.found = true;
      return best;
    }
  }
  return best;
}

}  // namespace jbstar
