#include "jbstar/octonion.hpp"

#include <cmath>

#include "jbstar/errors.hpp"

namespace jbstar {

namespace {

// i_a i_{a+1} = i_{a+3}, indices cyclic in 1..7. Generates the seven lines.
constexpr int kTriples[7][3] = {{1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 7},
                                {5, 6, 1}, {6, 7, 2}, {7, 1, 3}};

struct MulTable {
  int index[8][8];
  double sign[8][8];

  MulTable() {
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) {
        if (a == 0) { index[a][b] = b; sign[a][b] = 1.0; }
        else if (b == 0) { index[a][b] = a; sign[a][b] = 1.0; }
        else if (a == b) { index[a][b] = 0; sign[a][b] = -1.0; }
        else { index[a][b] = -1; sign[a][b] = 0.0; }
      }
    for (const auto& t : kTriples) {
      int a = t[0], b = t[1], c = t[2];
      set(a, b, c, +1); set(b, c, a, +1); set(c, a, b, +1);
      set(b, a, c, -1); set(c, b, a, -1); set(a, c, b, -1);
    }
  }

  void set(int a, int b, int c, int s) { index[a][b] = c; sign[a][b] = s; }
};

const MulTable& table() {
  static const MulTable t;
  return t;
}

}  // namespace

int oct_index(int a, int b) { return table().index[a][b]; }
double oct_sign(int a, int b) { return table().sign[a][b]; }

double Octonion::norm() const {
  double s = 0;
  for (double v : c) s += v * v;
  return std::sqrt(s);
}

Octonion octonion_mul(const Octonion& x, const Octonion& y) {
  const MulTable& t = table();
  Octonion out;
  for (int a = 0; a < 8; ++a) {
    if (x.c[a] == 0.0) continue;
    for (int b = 0; b < 8; ++b)
      out.c[t.index[a][b]] += t.sign[a][b] * x.c[a] * y.c[b];
  }
  return out;
}

Octonion octonion_conj(const Octonion& x) {
  Octonion out;
  out.c[0] = x.c[0];
  for (int i = 1; i < 8; ++i) out.c[i] = -x.c[i];
  return out;
}

COctonion coct_mul(const COctonion& x, const COctonion& y) {
  const MulTable& t = table();
  COctonion out;
  for (int a = 0; a < 8; ++a) {
    if (x.c[a] == Complex(0, 0)) continue;
    for (int b = 0; b < 8; ++b)
      out.c[t.index[a][b]] += t.sign[a][b] * x.c[a] * y.c[b];
  }
  return out;
}

COctonion coct_conj(const COctonion& x) {
  COctonion out;
  out.c[0] = x.c[0];
  for (int i = 1; i < 8; ++i) out.c[i] = -x.c[i];
  return out;
}

COctonion coct_add(const COctonion& x, const COctonion& y) {
  COctonion out;
  for (int i = 0; i < 8; ++i) out.c[i] = x.c[i] + y.c[i];
  return out;
}

COctonion coct_scale(Complex s, const COctonion& x) {
  COctonion out;
  for (int i = 0; i < 8; ++i) out.c[i] = s * x.c[i];
  return out;
}

Complex coct_norm_form(const COctonion& x) {
  Complex s = 0;
  for (int i = 0; i < 8; ++i) s += x.c[i] * x.c[i];
  return s;
}

// ---------------------------------------------------------------------------

H3View H3View::from_coords(const Vector& coords) {
  H3View v;
  for (int i = 0; i < 3; ++i) v.diag[i] = coords[i];
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 8; ++i) v.off[k].c[i] = coords[3 + 8 * k + i];
  return v;
}

Vector H3View::to_coords() const {
  Vector out(27);
  for (int i = 0; i < 3; ++i) out[i] = diag[i];
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 8; ++i) out[3 + 8 * k + i] = off[k].c[i];
  return out;
}

namespace {

// Full 3x3 matrix over C-octonions: entry(i,j). Layout per H3View docs.
using H3Matrix = std::array<std::array<COctonion, 3>, 3>;

H3Matrix expand(const H3View& v) {
  H3Matrix m;
  for (int i = 0; i < 3; ++i) m[i][i] = coct_scale(v.diag[i], COctonion::unit());
  m[1][2] = v.off[0];  m[2][1] = coct_conj(v.off[0]);
  m[2][0] = v.off[1];  m[0][2] = coct_conj(v.off[1]);
  m[0][1] = v.off[2];  m[1][0] = coct_conj(v.off[2]);
  return m;
}

H3Matrix mat_mul(const H3Matrix& a, const H3Matrix& b) {
  H3Matrix out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        out[i][j] = coct_add(out[i][j], coct_mul(a[i][k], b[k][j]));
  return out;
}

H3View collapse(const H3Matrix& m) {
  // Entries of a hermitian product land symmetrically; read from the
  // canonical positions.
  H3View v;
  for (int i = 0; i < 3; ++i) v.diag[i] = m[i][i].c[0];
  v.off[0] = m[1][2];
  v.off[1] = m[2][0];
  v.off[2] = m[0][1];
  return v;
}

}  // namespace

Vector h3_product(const Vector& a, const Vector& b) {
  H3Matrix A = expand(H3View::from_coords(a));
  H3Matrix B = expand(H3View::from_coords(b));
  H3Matrix AB = mat_mul(A, B), BA = mat_mul(B, A);
  H3Matrix S;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      S[i][j] = coct_scale(Complex(0.5, 0), coct_add(AB[i][j], BA[i][j]));
  return collapse(S).to_coords();
}

CubicInvariants h3_cubic_invariants(const Vector& coords) {
  H3View v = H3View::from_coords(coords);
  Complex T = v.diag[0] + v.diag[1] + v.diag[2];

  Vector sq = h3_product(coords, coords);
  H3View v2 = H3View::from_coords(sq);
  Complex T2 = v2.diag[0] + v2.diag[1] + v2.diag[2];
  Complex S = 0.5 * (T * T - T2);

  Complex N = v.diag[0] * v.diag[1] * v.diag[2]
            - v.diag[0] * coct_norm_form(v.off[0])
            - v.diag[1] * coct_norm_form(v.off[1])
            - v.diag[2] * coct_norm_form(v.off[2])
            + 2.0 * coct_mul(coct_mul(v.off[0], v.off[1]), v.off[2]).c[0];

  return {T.real(), S.real(), N.real()};
}

std::array<double, 3> h3_cubic_spectrum(const Vector& coords) {
  auto [T, S, N] = h3_cubic_invariants(coords);
  // t^3 - T t^2 + S t - N, depressed with t = u + T/3.
  double p = S - T * T / 3.0;
  double q = -N + T * S / 3.0 - 2.0 * T * T * T / 27.0;
  std::array<double, 3> roots;
  double scale = std::max(1.0, std::abs(T) / 3.0);
  // A self-adjoint element has an all-real spectrum, so p >= 0 can only be
  // roundoff around a triple root at T/3 (the discriminant -4p^3 - 27q^2
  // pins q near zero as well). The same holds whenever the root spread
  // 2 sqrt(-p/3) sits below the coefficient noise floor; T/3 is the exact
  // root mean either way.
  if (p >= 0.0 || std::sqrt(-p / 3.0) <= 1e-7 * scale) {
    roots = {T / 3.0, T / 3.0, T / 3.0};
  } else {
    double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * m);
    arg = std::clamp(arg, -1.0, 1.0);
    double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      roots[k] = m * std::cos(phi - 2.0 * M_PI * k / 3.0) + T / 3.0;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

Eigen::MatrixXd h3_multiplication_operator(const Vector& coords) {
  // Real form = real coordinates. Trace form tr(x o y) = x^T D y with
  // D = diag(1,1,1, 2 x 24); M_a is D-selfadjoint, so D^{1/2} M_a D^{-1/2}
  // is symmetric.
  Eigen::VectorXd a = coords.real();
  Eigen::MatrixXd M(27, 27);
  Vector av = a.cast<Complex>();
  for (int j = 0; j < 27; ++j) {
    Vector ej = Vector::Zero(27);
    ej[j] = 1.0;
    M.col(j) = h3_product(av, ej).real();
  }
  Eigen::VectorXd d(27);
  d.head(3).setOnes();
  d.tail(24).setConstant(2.0);
  Eigen::VectorXd ds = d.array().sqrt();
  Eigen::MatrixXd S = ds.asDiagonal() * M * ds.cwiseInverse().asDiagonal();
  return 0.5 * (S + S.transpose());
}

}  // namespace jbstar
