#include "jbstar/jordan_map.hpp"

#include <numeric>

#include "jbstar/sampling.hpp"
#include "jbstar/spectral.hpp"

namespace jbstar {

Element JordanMap::apply(const Element& x) const {
  if (x.algebra() != domain)
    throw DescriptorMismatch("map domain is " + domain.to_string() + ", got " +
                             x.algebra().to_string());
  return Element(codomain, matrix * x.coords());
}

JordanMap identity_map(const Algebra& a) {
  return {a, a, Matrix::Identity(a.dim(), a.dim()), {}};
}

JordanMap compose(const JordanMap& g, const JordanMap& f) {
  if (f.codomain != g.domain) throw DescriptorMismatch("composition domain mismatch");
  return {f.domain, g.codomain, g.matrix * f.matrix, f.sample_span};
}

namespace {

Element sample_from_span(const std::vector<Element>& span, const Algebra& alg, Rng& rng,
                         bool self_adjoint) {
  if (span.empty())
    return self_adjoint ? random_self_adjoint(alg, rng) : random_element(alg, rng);
  Element x = Element::zero(alg);
  for (const auto& b : span) x = x + Complex(rng.gaussian(), rng.gaussian()) * b;
  if (self_adjoint) x = 0.5 * (x + involution(x));
  return x;
}

}  // namespace

JordanMap::Residuals verify_jordan_map(const JordanMap& m, int samples,
                                       const Tolerances& tol, Rng& rng) {
  JordanMap::Residuals res;
  for (int i = 0; i < samples; ++i) {
    Element a = sample_from_span(m.sample_span, m.domain, rng, false);
    Element b = sample_from_span(m.sample_span, m.domain, rng, false);
    double scale = std::max(1.0, a.coord_norm() * b.coord_norm());
    res.multiplicativity =
        std::max(res.multiplicativity,
                 (m.apply(jordan_product(a, b)) - jordan_product(m.apply(a), m.apply(b)))
                         .coord_norm() /
                     scale);
    res.involution = std::max(
        res.involution,
        (m.apply(involution(a)) - involution(m.apply(a))).coord_norm() /
            std::max(1.0, a.coord_norm()));

    Element h = sample_from_span(m.sample_span, m.domain, rng, true);
    double nh = op_norm(h, tol);
    if (nh > tol.eq_tol)
      res.isometry = std::max(res.isometry,
                              std::abs(op_norm(m.apply(h), tol) - nh) / std::max(1.0, nh));
  }
  Element one = Element::unit(m.domain);
  Element image_unit = m.apply(one);
  // Unital onto the span: for subalgebra maps the unit of the span is the
  // join of its support, which the caller encodes by the span itself.
  if (m.sample_span.empty()) {
    res.unital = (image_unit - Element::unit(m.codomain)).coord_norm() <= tol.residual_tol;
  } else {
    Element span_unit = Element::zero(m.domain);
    for (const auto& b : m.sample_span) {
      // Project the unit onto the span (coordinate inner product).
      span_unit = span_unit + (b.coords().dot(one.coords())) * b;
    }
    res.unital =
        (m.apply(span_unit) - Element::unit(m.codomain)).coord_norm() <= tol.residual_tol;
  }
  return res;
}

namespace {

JordanMap matrix_block_iso(const Algebra& a, Rng& rng) {
  int n = a.size();
  Matrix U = random_unitary(n, rng);
  bool transpose = rng.integer(2) == 1;
  Matrix M(a.dim(), a.dim());
  for (int j = 0; j < a.dim(); ++j) {
    Element e = Element::basis(a, j);
    Matrix X = to_matrix(e);
    if (transpose) X.transposeInPlace();
    M.col(j) = from_matrix(a, U * X * U.adjoint()).coords();
  }
  return {a, a, M, {}};
}

JordanMap spin_block_iso(const Algebra& a, Rng& rng) {
  int n = a.size();
  Eigen::MatrixXd O = random_orthogonal(n - 1, rng);
  Eigen::MatrixXd full = Eigen::MatrixXd::Identity(n, n);
  full.block(1, 1, n - 1, n - 1) = O;
  return {a, a, full.cast<Complex>(), {}};
}

}  // namespace

JordanMap random_jordan_iso(const Algebra& a, Rng& rng) {
  switch (a.kind()) {
    case Kind::MatrixAlgebra: return matrix_block_iso(a, rng);
    case Kind::SpinFactor: return spin_block_iso(a, rng);
    case Kind::OctonionHermitian3:
      // Only the identity is generated for the cubic model (automorphism
      // machinery for it is out of scope).
      return identity_map(a);
    case Kind::DirectSum: {
      const auto& parts = a.summands();
      int k = static_cast<int>(parts.size());
      // Random permutation among summands with identical descriptors.
      std::vector<int> perm(k);
      std::iota(perm.begin(), perm.end(), 0);
      for (int i = k - 1; i > 0; --i) {
        int j = static_cast<int>(rng.integer(i + 1));
        if (parts[perm[i]] == parts[perm[j]]) std::swap(perm[i], perm[j]);
      }
      std::vector<Algebra> target_parts;
      for (int i = 0; i < k; ++i) target_parts.push_back(parts[perm[i]]);
      Algebra target = Algebra::direct_sum(target_parts);

      Matrix M = Matrix::Zero(a.dim(), a.dim());
      for (int i = 0; i < k; ++i) {
        JordanMap blk = random_jordan_iso(parts[perm[i]], rng);
        M.block(target.block_offset(i), a.block_offset(perm[i]), parts[perm[i]].dim(),
                parts[perm[i]].dim()) = blk.matrix;
      }
      return {a, target, M, {}};
    }
  }
  throw Error("unreachable");
}

}  // namespace jbstar
