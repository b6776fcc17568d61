#include "jbstar/sampling.hpp"

#include <Eigen/QR>

#include "jbstar/spectral.hpp"

namespace jbstar {

namespace {

Vector gaussian_complex(int n, Rng& rng) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = Complex(rng.gaussian(), rng.gaussian());
  return v;
}

}  // namespace

Element random_element(const Algebra& alg, Rng& rng) {
  return Element(alg, gaussian_complex(alg.dim(), rng));
}

Element random_self_adjoint(const Algebra& alg, Rng& rng) {
  switch (alg.kind()) {
    case Kind::MatrixAlgebra: {
      int n = alg.size();
      Matrix G(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = Complex(rng.gaussian(), rng.gaussian());
      return from_matrix(alg, 0.5 * (G + G.adjoint()));
    }
    case Kind::SpinFactor: {
      Vector v(alg.dim());
      v[0] = rng.gaussian();
      for (int i = 1; i < alg.dim(); ++i) v[i] = Complex(0, rng.gaussian());
      return Element(alg, std::move(v));
    }
    case Kind::OctonionHermitian3: {
      Vector v(27);
      for (int i = 0; i < 27; ++i) v[i] = rng.gaussian();
      return Element(alg, std::move(v));
    }
    case Kind::DirectSum: {
      Vector v(alg.dim());
      int off = 0;
      for (const auto& p : alg.summands()) {
        v.segment(off, p.dim()) = random_self_adjoint(p, rng).coords();
        off += p.dim();
      }
      return Element(alg, std::move(v));
    }
  }
  throw Error("unreachable");
}

namespace {

Element positive_sphere_single(const Algebra& alg, Rng& rng, const Tolerances& tol) {
  switch (alg.kind()) {
    case Kind::MatrixAlgebra: {
      int n = alg.size();
      for (int tries = 0; tries < 64; ++tries) {
        Matrix G(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) G(i, j) = Complex(rng.gaussian(), rng.gaussian());
        Matrix P = G.adjoint() * G;
        Element e = from_matrix(alg, P);
        double norm = op_norm(e, tol);
        if (norm < 0.1) continue;
        return e * Complex(1.0 / norm, 0);
      }
      throw Error("positive sphere sampling failed to produce a usable element");
    }
    case Kind::SpinFactor: {
      int n = alg.size();
      double r = rng.uniform(0.0, 0.5);
      Eigen::VectorXd w(n - 1);
      for (int i = 0; i < n - 1; ++i) w[i] = rng.gaussian();
      if (w.norm() > 0) w *= r / w.norm();
      Vector v(n);
      v[0] = 1.0 - r;
      for (int i = 1; i < n; ++i) v[i] = Complex(0, w[i - 1]);
      return Element(alg, std::move(v));
    }
    default: {
      // Spectral shift of a random self-adjoint element.
      for (int tries = 0; tries < 64; ++tries) {
        Element a = random_self_adjoint(alg, rng);
        SpectralData sd = j_spectrum(a, tol);
        double span = sd.max() - sd.min();
        if (span < 0.1) continue;
        Element shifted = (a - sd.min() * Element::unit(alg)) * Complex(1.0 / span, 0);
        return shifted;
      }
      throw Error("positive sphere sampling failed to produce a usable element");
    }
  }
}

}  // namespace

Element random_positive_sphere(const Algebra& alg, Rng& rng, const Tolerances& tol) {
  if (!alg.is_sum()) return positive_sphere_single(alg, rng, tol);
  const auto& parts = alg.summands();
  int full = static_cast<int>(rng.integer(parts.size()));
  Vector v(alg.dim());
  int off = 0;
  for (int i = 0; i < static_cast<int>(parts.size()); ++i) {
    Element b = random_positive_sphere(parts[i], rng, tol);
    double scale = (i == full) ? 1.0 : rng.uniform(0.0, 1.0);
    v.segment(off, parts[i].dim()) = b.coords() * scale;
    off += parts[i].dim();
  }
  return Element(alg, std::move(v));
}

Element random_positive_sphere_invertible(const Algebra& alg, Rng& rng,
                                          const Tolerances& tol) {
  // Spectrum pushed into [delta, 1] with max exactly 1.
  for (int tries = 0; tries < 64; ++tries) {
    Element a = random_positive_sphere(alg, rng, tol);
    double delta = rng.uniform(0.05, 0.5);
    Element b = delta * Element::unit(alg) + (1.0 - delta) * a;
    auto report = classify_positive(b, tol);
    if (report.invertible && report.min_eigenvalue > tol.eq_tol * 10) {
      return b * Complex(1.0 / report.norm, 0);
    }
  }
  throw Error("invertible positive sphere sampling failed");
}

Matrix random_unitary(int n, Rng& rng) {
  Matrix G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = Complex(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ();
  Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    Complex d = R(i, i);
    Q.col(i) *= (std::abs(d) > 0 ? d / std::abs(d) : Complex(1, 0));
  }
  return Q;
}

Eigen::MatrixXd random_orthogonal(int n, Rng& rng) {
  Eigen::MatrixXd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ();
  Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (R(i, i) < 0) Q.col(i) *= -1.0;
  return Q;
}

Element random_projection(const Algebra& alg, Rng& rng, const Tolerances& tol,
                          ProjectionOptions opts) {
  for (int tries = 0; tries < 256; ++tries) {
    Element candidate = Element::zero(alg);
    switch (alg.kind()) {
      case Kind::MatrixAlgebra: {
        int n = alg.size();
        int k = static_cast<int>(rng.integer(n + 1));
        Matrix U = random_unitary(n, rng);
        Matrix D = Matrix::Zero(n, n);
        for (int i = 0; i < k; ++i) D(i, i) = 1.0;
        candidate = from_matrix(alg, U * D * U.adjoint());
        break;
      }
      case Kind::SpinFactor: {
        int n = alg.size();
        std::uint64_t pick = rng.integer(8);
        if (pick == 0) candidate = Element::zero(alg);
        else if (pick == 1) candidate = Element::unit(alg);
        else {
          Eigen::VectorXd b(n - 1);
          for (int i = 0; i < n - 1; ++i) b[i] = rng.gaussian();
          if (b.norm() == 0) continue;
          b /= b.norm();
          Vector v(n);
          v[0] = 0.5;
          for (int i = 1; i < n; ++i) v[i] = Complex(0, 0.5 * b[i - 1]);
          candidate = Element(alg, std::move(v));
        }
        break;
      }
      case Kind::OctonionHermitian3: {
        Element a = random_self_adjoint(alg, rng);
        SpectralData sd = j_spectrum(a, tol);
        Element sum = Element::zero(alg);
        bool any = false;
        for (const auto& p : sd.projections)
          if (rng.integer(2) == 1) { sum = sum + p; any = true; }
        if (!any && !opts.allow_zero) continue;
        candidate = sum;
        break;
      }
      case Kind::DirectSum: {
        Vector v(alg.dim());
        int off = 0;
        for (const auto& p : alg.summands()) {
          ProjectionOptions blockwise{true, true};
          v.segment(off, p.dim()) = random_projection(p, rng, tol, blockwise).coords();
          off += p.dim();
        }
        candidate = Element(alg, std::move(v));
        break;
      }
    }
    double nrm = candidate.coord_norm();
    bool is_zero = nrm <= tol.eq_tol;
    bool is_unit = (candidate - Element::unit(alg)).coord_norm() <= tol.eq_tol;
    if (is_zero && !opts.allow_zero) continue;
    if (is_unit && !opts.allow_unit) continue;
    return candidate;
  }
  throw Error("random_projection failed for " + alg.to_string());
}

Element random_subprojection(const Element& p, Rng& rng, const Tolerances& tol,
                             bool allow_zero, bool allow_equal) {
  if (p.coord_norm() <= tol.eq_tol) {
    if (allow_zero) return p;
    throw PreconditionError("no non-zero subprojection of 0");
  }
  for (int tries = 0; tries < 256; ++tries) {
    Element x = u_operator(p, random_self_adjoint(p.algebra(), rng));
    SpectralData sd = j_spectrum(x, tol);
    Element sum = Element::zero(p.algebra());
    for (std::size_t i = 0; i < sd.values.size(); ++i) {
      if (std::abs(sd.values[i]) <= tol.cluster_width()) continue;  // kernel part
      if (rng.integer(2) == 1) sum = sum + sd.projections[i];
    }
    bool is_zero = sum.coord_norm() <= tol.eq_tol;
    bool is_equal = (sum - p).coord_norm() <= tol.eq_tol;
    if (is_zero && !allow_zero) continue;
    if (is_equal && !allow_equal) continue;
    return sum;
  }
  if (allow_equal) return p;  // rank-one corners admit only 0 and p
  throw Error("random_subprojection failed");
}

}  // namespace jbstar
