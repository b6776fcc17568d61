#include "jbstar/spin.hpp"

#include <cmath>

#include "jbstar/sampling.hpp"
#include "jbstar/spectral.hpp"

namespace jbstar {

SpinProjection SpinProjection::minimal(Eigen::VectorXd bvec) {
  double n = bvec.norm();
  if (std::abs(n - 1.0) > 1e-9)
    throw PreconditionError("minimal spin projection needs a unit vector");
  return {Kind::Minimal, std::move(bvec)};
}

SpinProjection decompose_spin_projection(const Element& p, const Tolerances& tol) {
  if (p.algebra().kind() != Kind::SpinFactor)
    throw DescriptorMismatch("spin projection expected");
  require_projection(p, tol, "decompose_spin_projection");
  int n = p.algebra().size();
  if (p.coord_norm() <= tol.eq_tol) return SpinProjection::zero();
  if ((p - Element::unit(p.algebra())).coord_norm() <= tol.eq_tol)
    return SpinProjection::unit();
  Eigen::VectorXd b(n - 1);
  for (int i = 1; i < n; ++i) b[i - 1] = 2.0 * p.coords()[i].imag();
  return SpinProjection::minimal(std::move(b));
}

Element spin_projection_element(const Algebra& spin, const SpinProjection& p) {
  if (spin.kind() != Kind::SpinFactor) throw DescriptorMismatch("spin algebra expected");
  switch (p.kind) {
    case SpinProjection::Kind::Zero: return Element::zero(spin);
    case SpinProjection::Kind::Unit: return Element::unit(spin);
    case SpinProjection::Kind::Minimal: {
      if (p.b.size() != spin.size() - 1)
        throw DescriptorMismatch("spin projection dimension mismatch");
      Vector v(spin.dim());
      v[0] = 0.5;
      for (int i = 1; i < spin.size(); ++i) v[i] = Complex(0, 0.5 * p.b[i - 1]);
      return Element(spin, std::move(v));
    }
  }
  throw Error("unreachable");
}

Eigen::VectorXd upsilon(const SpinProjection& p) {
  if (p.kind != SpinProjection::Kind::Minimal)
    throw PreconditionError("upsilon is defined on minimal projections only");
  return p.b;
}

SpinProjection upsilon_inv(const Eigen::VectorXd& b, const Tolerances& tol) {
  if (std::abs(b.norm() - 1.0) > tol.eq_tol)
    throw PreconditionError("upsilon_inv needs a unit vector");
  return SpinProjection::minimal(b);
}

double min_proj_distance(const SpinProjection& p, const SpinProjection& q) {
  if (p.kind != SpinProjection::Kind::Minimal || q.kind != SpinProjection::Kind::Minimal)
    throw PreconditionError("min_proj_distance is defined on minimal projections");
  return 0.5 * (p.b - q.b).norm();
}

// ---------------------------------------------------------------------------

SpinProjectionMap::SpinProjectionMap(
    Algebra source, Algebra target,
    std::function<SpinProjection(const SpinProjection&)> rule)
    : source_(std::move(source)), target_(std::move(target)), rule_(std::move(rule)) {
  if (source_.kind() != Kind::SpinFactor || target_.kind() != Kind::SpinFactor)
    throw DescriptorMismatch("projection map needs spin factors");
}

SpinProjection SpinProjectionMap::map(const SpinProjection& p) const { return rule_(p); }

Element SpinProjectionMap::map_element(const Element& p, const Tolerances& tol) const {
  return spin_projection_element(target_, map(decompose_spin_projection(p, tol)));
}

namespace {

struct LexLess {
  bool operator()(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
    for (int i = 0; i < a.size(); ++i) {
      if (a[i] < b[i]) return true;
      if (a[i] > b[i]) return false;
    }
    return false;
  }
};

// Sign of the first non-zero coordinate decides the hemisphere; a unit
// vector cannot be all-zero.
double hemisphere_sign(const Eigen::VectorXd& x) {
  for (int i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) return x[i] > 0 ? 1.0 : -1.0;
  throw PreconditionError("zero vector has no hemisphere");
}

/// Memoized injective random assignment between positive hemispheres,
/// extended by central symmetry. Not a total function: only queried points
/// acquire images, which covers every sampled property check.
class HemisphereAssignment {
public:
  explicit HemisphereAssignment(std::uint64_t seed) : rng_(seed) {}

  Eigen::VectorXd map(const Eigen::VectorXd& x) {
    double sign = hemisphere_sign(x);
    Eigen::VectorXd rep = sign * x;
    auto it = forward_.find(rep);
    if (it != forward_.end()) return sign * it->second;
    for (;;) {
      Eigen::VectorXd y(3);
      for (int i = 0; i < 3; ++i) y[i] = rng_.gaussian();
      if (y.norm() < 1e-6) continue;
      y /= y.norm();
      y *= hemisphere_sign(y);  // land in the positive hemisphere
      if (inverse_.count(y)) continue;  // keep the assignment injective
      forward_[rep] = y;
      inverse_[y] = rep;
      return sign * y;
    }
  }

private:
  Rng rng_;
  std::map<Eigen::VectorXd, Eigen::VectorXd, LexLess> forward_;
  std::map<Eigen::VectorXd, Eigen::VectorXd, LexLess> inverse_;
};

}  // namespace

SpinProjectionMap counterexample_theta(std::uint64_t seed) {
  auto g = std::make_shared<HemisphereAssignment>(seed);
  auto rule = [g](const SpinProjection& p) -> SpinProjection {
    switch (p.kind) {
      case SpinProjection::Kind::Zero: return SpinProjection::zero();
      case SpinProjection::Kind::Unit: return SpinProjection::unit();
      case SpinProjection::Kind::Minimal:
        return SpinProjection::minimal(g->map(p.b));
    }
    throw Error("unreachable");
  };
  return SpinProjectionMap(Algebra::spin(3), Algebra::spin(4), rule);
}

Eigen::MatrixXd sphere_isometry_extension(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& T, int d,
    const Tolerances& tol, Rng& rng, int samples) {
  Eigen::MatrixXd That(d, d);
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXd ei = Eigen::VectorXd::Zero(d);
    ei[i] = 1.0;
    That.col(i) = T(ei);
  }
  double ortho_res = (That.transpose() * That - Eigen::MatrixXd::Identity(d, d)).norm();
  if (ortho_res > tol.residual_tol)
    throw VerificationFailure("sphere map columns are not orthonormal", ortho_res);

  double worst = 0;
  for (int k = 0; k < samples; ++k) {
    Eigen::VectorXd x(d);
    for (int i = 0; i < d; ++i) x[i] = rng.gaussian();
    if (x.norm() < 1e-6) continue;
    x /= x.norm();
    worst = std::max(worst, (That * x - T(x)).norm());
  }
  if (worst > tol.residual_tol)
    throw VerificationFailure("linear extension disagrees with the sphere map", worst);
  return That;
}

JordanMap jordan_iso_from_theta(const SpinProjectionMap& theta, const Tolerances& tol,
                                Rng& rng, int samples) {
  const Algebra& src = theta.source();
  const Algebra& dst = theta.target();
  if (src.size() != dst.size())
    throw DescriptorMismatch(
        "spin factors of different dimension are not Jordan *-isomorphic; no linear "
        "extension exists");
  int n = src.size();

  auto T = [&theta](const Eigen::VectorXd& b) {
    return upsilon(theta.map(SpinProjection::minimal(b / b.norm())));
  };
  Eigen::MatrixXd That = sphere_isometry_extension(T, n - 1, tol, rng, samples);

  Eigen::MatrixXd full = Eigen::MatrixXd::Identity(n, n);
  full.block(1, 1, n - 1, n - 1) = That;
  JordanMap phi{src, dst, full.cast<Complex>(), {}};

  auto res = verify_jordan_map(phi, samples, tol, rng);
  if (!res.verified(tol))
    throw VerificationFailure("theta extension failed Jordan residuals",
                              std::max({res.multiplicativity, res.involution,
                                        res.isometry}));

  // The extension agrees with theta on sampled projections.
  for (int k = 0; k < samples; ++k) {
    Eigen::VectorXd b(n - 1);
    for (int i = 0; i < n - 1; ++i) b[i] = rng.gaussian();
    if (b.norm() < 1e-6) continue;
    b /= b.norm();
    Element p = spin_projection_element(src, SpinProjection::minimal(b));
    double gap = (phi.apply(p) - theta.map_element(p, tol)).coord_norm();
    if (gap > tol.residual_tol)
      throw VerificationFailure("extension disagrees with theta on a projection", gap);
  }
  return phi;
}

}  // namespace jbstar
