#pragma once

#include <functional>
#include <vector>

#include "jbstar/algebra.hpp"
#include "jbstar/tolerances.hpp"

namespace jbstar {

/// Spectrum of a self-adjoint element together with its spectral projections.
///
/// `eigenvalues` is the full list with multiplicities (rank-many entries,
/// ascending); `values` holds one representative per cluster (eigenvalues
/// grouped within 10 * spectral_tol) and `projections[i]` is the spectral
/// projection belonging to values[i]. The projections are mutually
/// orthogonal, sum to the unit, and sum(values[i] * projections[i])
/// reconstructs the element.
struct SpectralData {
  std::vector<double> eigenvalues;
  std::vector<double> values;
  std::vector<int> multiplicities;
  std::vector<Element> projections;

  double min() const { return eigenvalues.front(); }
  double max() const { return eigenvalues.back(); }
};

/// Spectrum of a self-adjoint element. Model dispatch: Hermitian
/// eigendecomposition (matrix), the two roots of the quadratic minimal
/// polynomial (spin), the three roots of the cubic characteristic polynomial
/// (cubic model); direct sums merge blockwise spectra.
SpectralData j_spectrum(const Element& a, const Tolerances& tol = {});

/// f(a) = sum f(values[i]) projections[i].
Element functional_calculus(const Element& a, const std::function<double(double)>& f,
                            const Tolerances& tol = {});

struct PositivityReport {
  bool positive;
  bool invertible;
  double norm;
  double min_eigenvalue;
};

/// Positivity/invertibility classification of a self-adjoint element.
PositivityReport classify_positive(const Element& a, const Tolerances& tol);

/// Smallest projection r with r o a = a, for positive a: the sum of the
/// spectral projections with eigenvalue above spectral_tol.
Element range_projection(const Element& a, const Tolerances& tol = {});

/// Algebra (operator) norm. Self-adjoint elements in every model: max |l|.
/// General elements: largest singular value (matrix model), the closed-form
/// spin norm, max over blocks (sums). General cubic-model elements are
/// unsupported and throw.
double op_norm(const Element& a, const Tolerances& tol = {});

/// Distance in the algebra norm.
double op_distance(const Element& a, const Element& b, const Tolerances& tol = {});

}  // namespace jbstar
