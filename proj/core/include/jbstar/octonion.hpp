#pragma once

#include <array>
#include <complex>
#include <cstdint>

#include "jbstar/algebra.hpp"

namespace jbstar {

/// Real octonion over the basis {1, i1, ..., i7}.
///
/// Multiplication convention (Fano plane): i_a * i_a = -1 and
/// i_a * i_{a+1} = i_{a+3} with indices taken cyclically in {1..7}, i.e. the
/// quaternionic triples are
///   (1,2,4) (2,3,5) (3,4,6) (4,5,7) (5,6,1) (6,7,2) (7,1,3),
/// each read cyclically with positive sign. Every unordered pair of distinct
/// imaginary units lies in exactly one triple.
struct Octonion {
  std::array<double, 8> c{};

  static Octonion unit() { Octonion o; o.c[0] = 1.0; return o; }
  double norm() const;
};

Octonion octonion_mul(const Octonion& x, const Octonion& y);
Octonion octonion_conj(const Octonion& x);

/// Sign and index tables of the basis products: i_a * i_b =
/// oct_sign(a,b) * i_{oct_index(a,b)} for a,b in 0..7 (0 = real unit).
int oct_index(int a, int b);
double oct_sign(int a, int b);

/// Complexified octonion (entry of H3(O^C)). Octonion conjugation extends
/// C-linearly; the complex structure is never conjugated by it.
struct COctonion {
  std::array<Complex, 8> c{};

  static COctonion unit() { COctonion o; o.c[0] = Complex(1, 0); return o; }
};

COctonion coct_mul(const COctonion& x, const COctonion& y);
COctonion coct_conj(const COctonion& x);
COctonion coct_add(const COctonion& x, const COctonion& y);
COctonion coct_scale(Complex s, const COctonion& x);
/// Bilinear norm form n(x) = x * conj(x) = sum x_i^2 (complex for COctonion).
Complex coct_norm_form(const COctonion& x);

/// Accessors for the cubic model layout. An OctonionHermitian3 element with
/// coordinates (d0, d1, d2, x1[8], x2[8], x3[8]) is the matrix
///
///   [ d0        x3        conj(x2) ]
///   [ conj(x3)  d1        x1       ]
///   [ x2        conj(x1)  d2       ]
///
/// i.e. octonion x_k occupies the cyclic position (k+1, k+2) mod 3.
struct H3View {
  std::array<Complex, 3> diag;
  std::array<COctonion, 3> off;

  static H3View from_coords(const Vector& coords);
  Vector to_coords() const;
};

/// Jordan product kernel for the cubic model: (AB + BA)/2 with octonionic
/// matrix multiplication (the result is hermitian again).
Vector h3_product(const Vector& a, const Vector& b);

/// Cubic characteristic data of a self-adjoint cubic-model element:
/// generic trace T, quadratic trace S, and the Freudenthal determinant
///   N(a) = d0 d1 d2 - d0 n(x1) - d1 n(x2) - d2 n(x3) + 2 Re((x1 x2) x3).
struct CubicInvariants {
  double trace;
  double quadratic_trace;
  double determinant;
};
CubicInvariants h3_cubic_invariants(const Vector& coords);

/// The three (real) roots of t^3 - T t^2 + S t - N, ascending, via the
/// trigonometric method on the depressed cubic.
std::array<double, 3> h3_cubic_spectrum(const Vector& coords);

/// The 27x27 real matrix of x -> a o x restricted to the real form H3(O),
/// symmetrized with respect to the trace form (used as an independent
/// spectral oracle: its eigenvalues are {l_i} together with (l_i + l_j)/2).
Eigen::MatrixXd h3_multiplication_operator(const Vector& coords);

}  // namespace jbstar
