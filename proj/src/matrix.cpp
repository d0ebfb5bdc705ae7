#include "bhlc/matrix.hpp"

namespace bhlc {

PolyMatrix identity_matrix(int n) {
  PolyMatrix m = zero_matrix(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Poly(1);
  return m;
}

PolyMatrix zero_matrix(int rows, int cols) { return PolyMatrix::Constant(rows, cols, Poly()); }

PolyVector zero_vector(int n) { return PolyVector::Constant(n, Poly()); }

PolyVector unit_vector(int n, int i) {
  PolyVector v = zero_vector(n);
  v(i) = Poly(1);
  return v;
}

bool is_del_only(const PolyMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (const auto& [mono, c] : m(i, j).terms())
        if (mono.degree() != mono.degree_in(Var::del())) return false;
  return true;
}

namespace {

PolyMatrix minor_of(const PolyMatrix& m, Eigen::Index row, Eigen::Index col) {
  const Eigen::Index n = m.rows();
  PolyMatrix r(n - 1, n - 1);
  for (Eigen::Index i = 0, ri = 0; i < n; ++i) {
    if (i == row) continue;
    for (Eigen::Index j = 0, rj = 0; j < n; ++j) {
      if (j == col) continue;
      r(ri, rj++) = m(i, j);
    }
    ++ri;
  }
  return r;
}

}  // namespace

Poly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("determinant of a non-square matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return Poly(1);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Poly det;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    Poly term = m(0, j) * determinant(minor_of(m, 0, j));
    if (j % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

PolyMatrix inverse(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("inverse of a non-square matrix");
  const Eigen::Index n = m.rows();
  Poly det = determinant(m);
  if (!is_unit(det))
    throw NotInvertible("determinant " + det.str() + " is not a nonzero constant");
  Rational inv_det = Rational(1) / det.constant();
  PolyMatrix r(n, n);
  if (n == 1) {
    r(0, 0) = Poly(inv_det);
    return r;
  }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      Poly cof = determinant(minor_of(m, j, i));
      if ((i + j) % 2 == 1) cof = -cof;
      r(i, j) = cof * inv_det;
    }
  return r;
}

PolyMatrix matrix_power(const PolyMatrix& m, int k) {
  PolyMatrix base = k < 0 ? inverse(m) : m;
  unsigned e = static_cast<unsigned>(k < 0 ? -k : k);
  PolyMatrix result = identity_matrix(static_cast<int>(m.rows()));
  while (e > 0) {
    if (e & 1u) result = (result * base).eval();
    e >>= 1u;
    if (e > 0) base = (base * base).eval();
  }
  return result;
}

PolyMatrix to_poly(const RationalMatrix& m) {
  return m.unaryExpr([](const Rational& r) { return Poly(r); });
}

std::string vector_str(const PolyVector& v, const std::vector<std::string>& names) {
  std::string out;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (v(k).is_zero()) continue;
    if (!out.empty()) out += " + ";
    const Poly& c = v(k);
    if (c == Poly(1)) {
      out += names[k];
    } else {
      out += "(" + c.str() + ")*" + names[k];
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace bhlc
