#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "jbstar/errors.hpp"
#include "jbstar/tolerances.hpp"

namespace jbstar {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

enum class Kind { MatrixAlgebra, SpinFactor, OctonionHermitian3, DirectSum };

/// Descriptor of a finite-dimensional Jordan-*-algebra model.
///
/// Supported models and canonical bases:
///  - MatrixAlgebra(n): n x n complex matrices, coordinates are the matrix
///    entries in row-major order (matrix units E_ij).
///  - SpinFactor(n): complex Hilbert space of dimension n >= 3 with
///    orthonormal basis e_1..e_n, e_1 the unit, conjugation = componentwise
///    complex conjugation. The inner product <x|y> is linear in the first
///    argument.
///  - OctonionHermitian3: hermitian 3x3 matrices over the complexified
///    octonions, 27 complex coordinates: 3 diagonal scalars followed by the
///    three off-diagonal octonions in cyclic position order (see
///    octonion.hpp for the multiplication convention and matrix layout).
///  - DirectSum: non-empty flat list of the above, concatenated coordinates,
///    blockwise operations, l-infinity norm.
///
/// Descriptors are immutable values; copies are cheap (shared summand list).
class Algebra {
public:
  static Algebra matrix(int n);
  static Algebra spin(int n);
  static Algebra h3o();
  /// Builds a direct sum; nested sums are flattened.
  static Algebra direct_sum(std::vector<Algebra> parts);
  /// Parses the CLI grammar: `mat:n`, `spin:n`, `h3o`, `sum:<d>,<d>,...`.
  static Algebra parse(std::string_view text);

  Kind kind() const { return kind_; }
  /// Complex dimension of the coordinate space.
  int dim() const { return dim_; }
  /// Model size parameter: n for matrix/spin models, 3 for the cubic model.
  int size() const { return size_; }
  /// Maximal number of mutually orthogonal non-zero projections.
  int rank() const;
  bool is_sum() const { return kind_ == Kind::DirectSum; }
  const std::vector<Algebra>& summands() const;
  /// Coordinate offset of summand `i` in the concatenated vector.
  int block_offset(int i) const;

  std::string to_string() const;
  bool operator==(const Algebra& other) const;
  bool operator!=(const Algebra& other) const { return !(*this == other); }

private:
  Algebra(Kind kind, int size, int dim) : kind_(kind), size_(size), dim_(dim) {}

  Kind kind_;
  int size_ = 0;
  int dim_ = 0;
  std::shared_ptr<const std::vector<Algebra>> summands_;
};

/// A value of an algebra: coordinate vector over the canonical basis, tagged
/// with its descriptor. Immutable in spirit; all operations return fresh
/// elements and never mutate inputs.
class Element {
public:
  Element(Algebra algebra, Vector coords);

  static Element zero(const Algebra& a);
  static Element unit(const Algebra& a);
  static Element basis(const Algebra& a, int i);

  const Algebra& algebra() const { return algebra_; }
  const Vector& coords() const { return coords_; }

  /// l2 norm of the coordinate vector; the norm used for algebraic residual
  /// checks (it dominates the algebra norm up to a sqrt(2) factor in every
  /// model, and residual thresholds leave orders of magnitude of slack).
  double coord_norm() const { return coords_.norm(); }

  /// Block view into a direct sum (copy of the segment, tagged with the
  /// summand descriptor). For non-sums block(0) is the element itself.
  Element block(int i) const;
  /// Embeds a summand element into the direct sum at block `i`, zero elsewhere.
  static Element embed(const Algebra& sum, int i, const Element& part);

  Element operator+(const Element& other) const;
  Element operator-(const Element& other) const;
  Element operator-() const;
  Element operator*(Complex scalar) const;

private:
  Algebra algebra_;
  Vector coords_;
};

inline Element operator*(Complex scalar, const Element& e) { return e * scalar; }
inline Element operator*(double scalar, const Element& e) { return e * Complex(scalar, 0); }

/// Jordan product a o b. Matrix model: (ab + ba)/2; spin model:
/// <a|1>b + <b|1>a - <a|conj(b)>1; cubic model: symmetrized octonionic
/// matrix product.
Element jordan_product(const Element& a, const Element& b);

/// Algebra involution a -> a*. Conjugate transpose in the matrix model,
/// 2<1|a>1 - conj(a) in the spin model, coordinatewise complex conjugation
/// in the cubic model (whose real form is the self-adjoint part).
Element involution(const Element& a);

/// Jordan triple product {x,y,z} = (x o y*) o z + (z o y*) o x - (x o z) o y*.
Element triple_product(const Element& x, const Element& y, const Element& z);

/// U_{a,c}(b) = (a o b) o c + (b o c) o a - (a o c) o b.
Element u_operator(const Element& a, const Element& c, const Element& b);
/// U_a(b) = U_{a,a}(b); equals aba in the matrix model.
Element u_operator(const Element& a, const Element& b);

/// Operator commutation: (a o c) o b == a o (c o b) for every canonical
/// basis element c, to residual_tol (coordinate norm).
bool operator_commute(const Element& a, const Element& b, const Tolerances& tol);

bool is_self_adjoint(const Element& a, const Tolerances& tol);

/// Left-nested Jordan power a^k (unambiguous by power associativity).
Element power(const Element& a, int k);

/// Matrix-model bridges. Throw unless the element's algebra is MatrixAlgebra.
Matrix to_matrix(const Element& a);
Element from_matrix(const Algebra& a, const Matrix& m);

void require_same_algebra(const Element& a, const Element& b);

}  // namespace jbstar
