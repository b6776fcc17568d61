#include "jbstar/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "jbstar/octonion.hpp"

namespace jbstar {

namespace {

void require_self_adjoint(const Element& a, const Tolerances& tol, const char* op) {
  if (!is_self_adjoint(a, tol))
    throw NotSelfAdjoint(std::string(op) + " requires a self-adjoint element");
}

// Per-model raw data: list of (eigenvalue, projection) before clustering.
// For the matrix model each eigenvalue carries its rank-one eigenprojector;
// clustering sums them.
struct EigenPair {
  double value;
  Vector projection;
};

std::vector<EigenPair> matrix_pairs(const Algebra& alg, const Vector& coords) {
  int n = alg.size();
  using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> A(coords.data(), n, n);
  Matrix H = 0.5 * (Matrix(A) + Matrix(A).adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  std::vector<EigenPair> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    Matrix P = es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    RowMat Pr = P;
    out.push_back({es.eigenvalues()[i], Eigen::Map<const Vector>(Pr.data(), n * n)});
  }
  return out;
}

std::vector<EigenPair> spin_pairs(const Algebra& alg, const Vector& coords) {
  int n = alg.size();
  double alpha = coords[0].real();
  Eigen::VectorXd w(n);
  w[0] = 0.0;
  for (int i = 1; i < n; ++i) w[i] = coords[i].imag();
  double r = w.norm();
  std::vector<EigenPair> out;
  if (r == 0.0) {
    // alpha with multiplicity 2 (rank-2 model); single projection = unit.
    Vector half = Vector::Zero(n);
    half[0] = 0.5;
    out.push_back({alpha, half});
    out.push_back({alpha, half});
    return out;
  }
  Eigen::VectorXd bhat = w / r;
  Vector pm = Vector::Zero(n), pp = Vector::Zero(n);
  pm[0] = pp[0] = 0.5;
  for (int i = 1; i < n; ++i) {
    pp[i] = Complex(0, 0.5 * bhat[i]);
    pm[i] = Complex(0, -0.5 * bhat[i]);
  }
  out.push_back({alpha - r, pm});
  out.push_back({alpha + r, pp});
  return out;
}

// Nearly-multiple cubic roots split by O(sqrt(eps) * cond), observed up to
// ~1e-7; the clustering width must absorb that conditioning error. The
// cluster mean is accurate because the split is symmetric.
std::vector<std::pair<double, int>> h3_clustered_roots(const Vector& coords,
                                                       const Tolerances& tol) {
  auto roots = h3_cubic_spectrum(coords);
  double scale = std::max({1.0, std::abs(roots[0]), std::abs(roots[2])});
  double width = std::max(tol.cluster_width(), 1e-6 * scale);
  std::vector<std::pair<double, int>> clusters;  // (mean, count)
  for (double r : roots) {
    if (!clusters.empty() && r - clusters.back().first <= width)
      clusters.back() = {(clusters.back().first * clusters.back().second + r) /
                             (clusters.back().second + 1),
                         clusters.back().second + 1};
    else
      clusters.push_back({r, 1});
  }
  return clusters;
}

std::vector<EigenPair> h3_pairs(const Vector& coords, const Tolerances& tol) {
  // Cluster the roots, then Lagrange-interpolate on the element: the
  // subalgebra generated by one self-adjoint element is associative, so
  // polynomials in `a` are unambiguous Jordan polynomials.
  auto clusters = h3_clustered_roots(coords, tol);
  Algebra alg = Algebra::h3o();
  Element a(alg, coords);
  Element one = Element::unit(alg);
  std::vector<EigenPair> out;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    Element p = one;
    for (std::size_t j = 0; j < clusters.size(); ++j) {
      if (i == j) continue;
      p = jordan_product(p, (a - clusters[j].first * one) *
                                Complex(1.0 / (clusters[i].first - clusters[j].first), 0));
    }
    // Idempotent polish: P <- 3P^2 - 2P^3 converges quadratically to the
    // exact spectral projection and scrubs the interpolation error.
    for (int it = 0; it < 2; ++it) {
      Element p2 = jordan_product(p, p);
      p = 3.0 * p2 - 2.0 * jordan_product(p2, p);
    }
    // The Lagrange projection already carries the full cluster rank; extra
    // multiplicity entries get zero coordinates so the clustered sum is right.
    for (int k = 0; k < clusters[i].second; ++k)
      out.push_back({clusters[i].first, k == 0 ? p.coords() : Vector(Vector::Zero(27))});
  }
  return out;
}

std::vector<EigenPair> pairs_dispatch(const Algebra& alg, const Vector& coords,
                                      const Tolerances& tol) {
  switch (alg.kind()) {
    case Kind::MatrixAlgebra: return matrix_pairs(alg, coords);
    case Kind::SpinFactor: return spin_pairs(alg, coords);
    case Kind::OctonionHermitian3: return h3_pairs(coords, tol);
    case Kind::DirectSum: {
      std::vector<EigenPair> out;
      int off = 0;
      for (const auto& p : alg.summands()) {
        auto blk = pairs_dispatch(p, coords.segment(off, p.dim()), tol);
        for (auto& e : blk) {
          Vector lifted = Vector::Zero(alg.dim());
          lifted.segment(off, p.dim()) = e.projection;
          out.push_back({e.value, std::move(lifted)});
        }
        off += p.dim();
      }
      return out;
    }
  }
  throw Error("unreachable");
}

}  // namespace

SpectralData j_spectrum(const Element& a, const Tolerances& tol) {
  require_self_adjoint(a, tol, "j_spectrum");
  auto pairs = pairs_dispatch(a.algebra(), a.coords(), tol);
  std::sort(pairs.begin(), pairs.end(),
            [](const EigenPair& x, const EigenPair& y) { return x.value < y.value; });

  SpectralData data;
  for (const auto& p : pairs) data.eigenvalues.push_back(p.value);

  // Cluster within 10 * spectral_tol (chained on consecutive gaps).
  std::size_t i = 0;
  while (i < pairs.size()) {
    std::size_t j = i + 1;
    while (j < pairs.size() && pairs[j].value - pairs[j - 1].value <= tol.cluster_width()) ++j;
    double mean = 0;
    Vector proj = Vector::Zero(a.algebra().dim());
    for (std::size_t k = i; k < j; ++k) {
      mean += pairs[k].value;
      proj += pairs[k].projection;
    }
    mean /= static_cast<double>(j - i);
    data.values.push_back(mean);
    data.multiplicities.push_back(static_cast<int>(j - i));
    data.projections.emplace_back(a.algebra(), std::move(proj));
    i = j;
  }
  return data;
}

Element functional_calculus(const Element& a, const std::function<double(double)>& f,
                            const Tolerances& tol) {
  SpectralData sd = j_spectrum(a, tol);
  Element out = Element::zero(a.algebra());
  for (std::size_t i = 0; i < sd.values.size(); ++i) {
    double fv = f(sd.values[i]);
    if (!std::isfinite(fv))
      throw PreconditionError("function undefined at spectral value " +
                              std::to_string(sd.values[i]));
    out = out + fv * sd.projections[i];
  }
  return out;
}

PositivityReport classify_positive(const Element& a, const Tolerances& tol) {
  SpectralData sd = j_spectrum(a, tol);
  // Cluster means are better conditioned than raw roots near multiple
  // eigenvalues, so classification reads them.
  double lo = sd.values.front(), hi = sd.values.back();
  double norm = std::max(std::abs(lo), std::abs(hi));
  return {lo >= -tol.eq_tol, lo > tol.eq_tol, norm, lo};
}

Element range_projection(const Element& a, const Tolerances& tol) {
  SpectralData sd = j_spectrum(a, tol);
  if (sd.min() < -tol.eq_tol)
    throw NotPositive("range_projection requires a positive element (min eigenvalue " +
                      std::to_string(sd.min()) + ")");
  Element out = Element::zero(a.algebra());
  for (std::size_t i = 0; i < sd.values.size(); ++i)
    if (sd.values[i] > tol.spectral_tol) out = out + sd.projections[i];
  return out;
}

namespace {

double norm_dispatch(const Algebra& alg, const Vector& coords, const Tolerances& tol) {
  switch (alg.kind()) {
    case Kind::MatrixAlgebra: {
      int n = alg.size();
      using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
      Eigen::Map<const RowMat> A(coords.data(), n, n);
      Matrix M = A;
      if ((M - M.adjoint()).norm() <= tol.eq_tol * std::max(1.0, M.norm())) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (M + M.adjoint()),
                                                 Eigen::EigenvaluesOnly);
        return es.eigenvalues().cwiseAbs().maxCoeff();
      }
      return M.jacobiSvd().singularValues()[0];
    }
    case Kind::SpinFactor: {
      // Self-adjoint a = alpha e1 + i w: the closed form collapses to
      // |alpha| + ||w||, which avoids the sqrt cancellation of the general
      // formula near extreme elements.
      double sa_res = 0;
      sa_res += std::abs(coords[0].imag());
      for (int i = 1; i < coords.size(); ++i) sa_res += std::abs(coords[i].real());
      if (sa_res <= tol.spectral_tol * std::max(1.0, coords.norm())) {
        double alpha = coords[0].real();
        double w2 = 0;
        for (int i = 1; i < coords.size(); ++i) w2 += coords[i].imag() * coords[i].imag();
        return std::abs(alpha) + std::sqrt(w2);
      }
      // ||a||^2 = <a|a> + sqrt(<a|a>^2 - |<a|conj(a)>|^2)
      double h = coords.squaredNorm();
      Complex q = (coords.array() * coords.array()).sum();
      double disc = std::max(0.0, (h - std::abs(q)) * (h + std::abs(q)));
      return std::sqrt(h + std::sqrt(disc));
    }
    case Kind::OctonionHermitian3: {
      // Extremal cluster means, robust against the sqrt(eps) split of nearly
      // multiple cubic roots.
      auto extremal = [&](const Vector& c) {
        auto cl = h3_clustered_roots(c, tol);
        return std::max(std::abs(cl.front().first), std::abs(cl.back().first));
      };
      Element a(Algebra::h3o(), coords);
      if (is_self_adjoint(a, tol)) return extremal(coords);
      // i * (anti-self-adjoint) is self-adjoint and the norm is unchanged.
      Element ia(Algebra::h3o(), Vector(coords * Complex(0, 1)));
      if (is_self_adjoint(ia, tol)) return extremal(ia.coords());
      throw PreconditionError(
          "the algebra norm of a general (non-self-adjoint) cubic-model element is not "
          "supported");
    }
    case Kind::DirectSum: {
      double m = 0;
      int off = 0;
      for (const auto& p : alg.summands()) {
        m = std::max(m, norm_dispatch(p, coords.segment(off, p.dim()), tol));
        off += p.dim();
      }
      return m;
    }
  }
  throw Error("unreachable");
}

}  // namespace

double op_norm(const Element& a, const Tolerances& tol) {
  return norm_dispatch(a.algebra(), a.coords(), tol);
}

double op_distance(const Element& a, const Element& b, const Tolerances& tol) {
  return op_norm(a - b, tol);
}

}  // namespace jbstar
