#include "jbstar/algebra.hpp"

#include <charconv>
#include <sstream>

#include "jbstar/octonion.hpp"

namespace jbstar {

namespace {

int parse_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("bad integer in descriptor: '" + std::string(s) + "'");
  return value;
}

}  // namespace

Algebra Algebra::matrix(int n) {
  if (n < 1) throw ParseError("matrix model requires n >= 1");
  return Algebra(Kind::MatrixAlgebra, n, n * n);
}

Algebra Algebra::spin(int n) {
  if (n < 3) throw ParseError("spin factor requires dimension >= 3");
  return Algebra(Kind::SpinFactor, n, n);
}

Algebra Algebra::h3o() { return Algebra(Kind::OctonionHermitian3, 3, 27); }

Algebra Algebra::direct_sum(std::vector<Algebra> parts) {
  std::vector<Algebra> flat;
  for (auto& p : parts) {
    if (p.is_sum())
      flat.insert(flat.end(), p.summands().begin(), p.summands().end());
    else
      flat.push_back(p);
  }
  if (flat.empty()) throw ParseError("direct sum must be non-empty");
  if (flat.size() == 1) return flat.front();
  int dim = 0;
  for (const auto& p : flat) dim += p.dim();
  Algebra a(Kind::DirectSum, static_cast<int>(flat.size()), dim);
  a.summands_ = std::make_shared<const std::vector<Algebra>>(std::move(flat));
  return a;
}

Algebra Algebra::parse(std::string_view text) {
  if (text == "h3o") return h3o();
  if (text.rfind("mat:", 0) == 0) return matrix(parse_int(text.substr(4)));
  if (text.rfind("spin:", 0) == 0) return spin(parse_int(text.substr(5)));
  if (text.rfind("sum:", 0) == 0) {
    std::string_view rest = text.substr(4);
    std::vector<Algebra> parts;
    // Summand grammar is flat, so splitting on ',' is unambiguous: each part
    // is mat:n, spin:n or h3o.
    while (!rest.empty()) {
      auto comma = rest.find(',');
      std::string_view tok = rest.substr(0, comma);
      if (tok.empty()) throw ParseError("empty summand in '" + std::string(text) + "'");
      if (tok.rfind("sum:", 0) == 0)
        throw ParseError("nested sums are not part of the descriptor grammar");
      parts.push_back(parse(tok));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return direct_sum(std::move(parts));
  }
  throw ParseError("unknown algebra descriptor: '" + std::string(text) + "'");
}

int Algebra::rank() const {
  switch (kind_) {
    case Kind::MatrixAlgebra: return size_;
    case Kind::SpinFactor: return 2;
    case Kind::OctonionHermitian3: return 3;
    case Kind::DirectSum: {
      int r = 0;
      for (const auto& p : summands()) r += p.rank();
      return r;
    }
  }
  return 0;
}

const std::vector<Algebra>& Algebra::summands() const {
  static const std::vector<Algebra> empty;
  return summands_ ? *summands_ : empty;
}

int Algebra::block_offset(int i) const {
  if (!is_sum()) return 0;
  int off = 0;
  for (int k = 0; k < i; ++k) off += summands()[k].dim();
  return off;
}

std::string Algebra::to_string() const {
  switch (kind_) {
    case Kind::MatrixAlgebra: return "mat:" + std::to_string(size_);
    case Kind::SpinFactor: return "spin:" + std::to_string(size_);
    case Kind::OctonionHermitian3: return "h3o";
    case Kind::DirectSum: {
      std::string s = "sum:";
      bool first = true;
      for (const auto& p : summands()) {
        if (!first) s += ',';
        s += p.to_string();
        first = false;
      }
      return s;
    }
  }
  return "?";
}

bool Algebra::operator==(const Algebra& other) const {
  if (kind_ != other.kind_ || size_ != other.size_ || dim_ != other.dim_) return false;
  if (kind_ == Kind::DirectSum) {
    const auto& a = summands();
    const auto& b = other.summands();
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Element

Element::Element(Algebra algebra, Vector coords)
    : algebra_(std::move(algebra)), coords_(std::move(coords)) {
  if (coords_.size() != algebra_.dim())
    throw DescriptorMismatch("coordinate length " + std::to_string(coords_.size()) +
                             " does not match " + algebra_.to_string());
  if (!coords_.allFinite())
    throw PreconditionError("element coordinates must be finite");
}

Element Element::zero(const Algebra& a) { return Element(a, Vector::Zero(a.dim())); }

Element Element::unit(const Algebra& a) {
  Vector v = Vector::Zero(a.dim());
  switch (a.kind()) {
    case Kind::MatrixAlgebra: {
      int n = a.size();
      for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;
      break;
    }
    case Kind::SpinFactor:
      v[0] = 1.0;
      break;
    case Kind::OctonionHermitian3:
      v[0] = v[1] = v[2] = 1.0;
      break;
    case Kind::DirectSum: {
      int off = 0;
      for (const auto& p : a.summands()) {
        v.segment(off, p.dim()) = Element::unit(p).coords();
        off += p.dim();
      }
      break;
    }
  }
  return Element(a, std::move(v));
}

Element Element::basis(const Algebra& a, int i) {
  if (i < 0 || i >= a.dim()) throw PreconditionError("basis index out of range");
  Vector v = Vector::Zero(a.dim());
  v[i] = 1.0;
  return Element(a, std::move(v));
}

Element Element::block(int i) const {
  if (!algebra_.is_sum()) {
    if (i != 0) throw PreconditionError("block index out of range");
    return *this;
  }
  const auto& parts = algebra_.summands();
  if (i < 0 || i >= static_cast<int>(parts.size()))
    throw PreconditionError("block index out of range");
  return Element(parts[i], coords_.segment(algebra_.block_offset(i), parts[i].dim()));
}

Element Element::embed(const Algebra& sum, int i, const Element& part) {
  if (!sum.is_sum()) {
    if (i != 0 || part.algebra() != sum)
      throw DescriptorMismatch("embed target is not a direct sum");
    return part;
  }
  const auto& parts = sum.summands();
  if (i < 0 || i >= static_cast<int>(parts.size()) || parts[i] != part.algebra())
    throw DescriptorMismatch("summand mismatch in embed");
  Vector v = Vector::Zero(sum.dim());
  v.segment(sum.block_offset(i), part.algebra().dim()) = part.coords();
  return Element(sum, std::move(v));
}

Element Element::operator+(const Element& other) const {
  require_same_algebra(*this, other);
  return Element(algebra_, coords_ + other.coords_);
}

Element Element::operator-(const Element& other) const {
  require_same_algebra(*this, other);
  return Element(algebra_, coords_ - other.coords_);
}

Element Element::operator-() const { return Element(algebra_, -coords_); }

Element Element::operator*(Complex scalar) const { return Element(algebra_, coords_ * scalar); }

void require_same_algebra(const Element& a, const Element& b) {
  if (a.algebra() != b.algebra())
    throw DescriptorMismatch("elements of " + a.algebra().to_string() + " and " +
                             b.algebra().to_string() + " cannot be combined");
}

// ---------------------------------------------------------------------------
// Products, per-model kernels

namespace {

Vector matrix_product_kernel(int n, const Vector& a, const Vector& b) {
  using MatMap = Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                                Eigen::RowMajor>>;
  MatMap A(a.data(), n, n), B(b.data(), n, n);
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> C =
      0.5 * (A * B + B * A);
  return Eigen::Map<const Vector>(C.data(), n * n);
}

Vector spin_product_kernel(const Vector& a, const Vector& b) {
  // a o b = <a|1> b + <b|1> a - <a|conj(b)> 1, with <x|y> linear in x.
  Complex bilinear = (a.array() * b.array()).sum();
  Vector out = a[0] * b + b[0] * a;
  out[0] -= bilinear;
  return out;
}

Vector product_dispatch(const Algebra& alg, const Vector& a, const Vector& b) {
  switch (alg.kind()) {
    case Kind::MatrixAlgebra: return matrix_product_kernel(alg.size(), a, b);
    case Kind::SpinFactor: return spin_product_kernel(a, b);
    case Kind::OctonionHermitian3: return h3_product(a, b);
    case Kind::DirectSum: {
      Vector out(alg.dim());
      int off = 0;
      for (const auto& p : alg.summands()) {
        out.segment(off, p.dim()) =
            product_dispatch(p, a.segment(off, p.dim()), b.segment(off, p.dim()));
        off += p.dim();
      }
      return out;
    }
  }
  throw Error("unreachable");
}

Vector involution_dispatch(const Algebra& alg, const Vector& a) {
  switch (alg.kind()) {
    case Kind::MatrixAlgebra: {
      int n = alg.size();
      Vector out(a.size());
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i * n + j] = std::conj(a[j * n + i]);
      return out;
    }
    case Kind::SpinFactor: {
      // a* = 2 <1|a> 1 - conj(a)
      Vector out = -a.conjugate();
      out[0] += 2.0 * std::conj(a[0]);
      return out;
    }
    case Kind::OctonionHermitian3:
      return a.conjugate();
    case Kind::DirectSum: {
      Vector out(alg.dim());
      int off = 0;
      for (const auto& p : alg.summands()) {
        out.segment(off, p.dim()) = involution_dispatch(p, a.segment(off, p.dim()));
        off += p.dim();
      }
      return out;
    }
  }
  throw Error("unreachable");
}

}  // namespace

Element jordan_product(const Element& a, const Element& b) {
  require_same_algebra(a, b);
  return Element(a.algebra(), product_dispatch(a.algebra(), a.coords(), b.coords()));
}

Element involution(const Element& a) {
  return Element(a.algebra(), involution_dispatch(a.algebra(), a.coords()));
}

Element triple_product(const Element& x, const Element& y, const Element& z) {
  require_same_algebra(x, y);
  require_same_algebra(x, z);
  Element ys = involution(y);
  return jordan_product(jordan_product(x, ys), z) + jordan_product(jordan_product(z, ys), x) -
         jordan_product(jordan_product(x, z), ys);
}

Element u_operator(const Element& a, const Element& c, const Element& b) {
  require_same_algebra(a, b);
  require_same_algebra(a, c);
  return jordan_product(jordan_product(a, b), c) + jordan_product(jordan_product(b, c), a) -
         jordan_product(jordan_product(a, c), b);
}

Element u_operator(const Element& a, const Element& b) { return u_operator(a, a, b); }

bool operator_commute(const Element& a, const Element& b, const Tolerances& tol) {
  require_same_algebra(a, b);
  const Algebra& alg = a.algebra();
  for (int i = 0; i < alg.dim(); ++i) {
    Element c = Element::basis(alg, i);
    Element lhs = jordan_product(jordan_product(a, c), b);
    Element rhs = jordan_product(a, jordan_product(c, b));
    if ((lhs - rhs).coord_norm() > tol.residual_tol) return false;
  }
  return true;
}

bool is_self_adjoint(const Element& a, const Tolerances& tol) {
  return (involution(a) - a).coord_norm() <= tol.eq_tol * std::max(1.0, a.coord_norm());
}

Element power(const Element& a, int k) {
  if (k < 0) throw PreconditionError("power requires k >= 0");
  if (k == 0) return Element::unit(a.algebra());
  Element out = a;
  for (int i = 1; i < k; ++i) out = jordan_product(out, a);
  return out;
}

Matrix to_matrix(const Element& a) {
  if (a.algebra().kind() != Kind::MatrixAlgebra)
    throw DescriptorMismatch("to_matrix requires the matrix model");
  int n = a.algebra().size();
  using MatMap = Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                                Eigen::RowMajor>>;
  return MatMap(a.coords().data(), n, n);
}

Element from_matrix(const Algebra& a, const Matrix& m) {
  if (a.kind() != Kind::MatrixAlgebra)
    throw DescriptorMismatch("from_matrix requires the matrix model");
  int n = a.size();
  if (m.rows() != n || m.cols() != n) throw DescriptorMismatch("matrix size mismatch");
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
  return Element(a, Eigen::Map<const Vector>(rm.data(), n * n));
}

}  // namespace jbstar
