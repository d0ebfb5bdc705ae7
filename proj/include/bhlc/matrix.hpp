#pragma once

#include "bhlc/poly.hpp"

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace bhlc {

using PolyMatrix = Eigen::Matrix<Poly, Eigen::Dynamic, Eigen::Dynamic>;
using PolyVector = Eigen::Matrix<Poly, Eigen::Dynamic, 1>;
using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/// Raised when an inverse (or a negative power) of a twist map is requested
/// but its determinant is not a nonzero constant.
class NotInvertible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

PolyMatrix identity_matrix(int n);
PolyMatrix zero_matrix(int rows, int cols);
PolyVector zero_vector(int n);
PolyVector unit_vector(int n, int i);

template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

/// Entrywise simultaneous substitution.
template <typename Derived>
Eigen::Matrix<Poly, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime> substitute(
    const Eigen::MatrixBase<Derived>& m, const Substitution& images) {
  return m.unaryExpr([&](const Poly& p) { return substitute(p, images); });
}

template <typename Derived>
Eigen::Matrix<Poly, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime> scaled(
    const Eigen::MatrixBase<Derived>& m, const Poly& f) {
  return m.unaryExpr([&](const Poly& p) { return p * f; });
}

/// Largest total degree of any entry (-1 if all zero).
template <typename Derived>
int total_degree(const Eigen::MatrixBase<Derived>& m) {
  int d = -1;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) d = std::max(d, m(i, j).total_degree());
  return d;
}

template <typename Derived>
int max_slot(const Eigen::MatrixBase<Derived>& m) {
  int s = -1;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) s = std::max(s, m(i, j).max_slot());
  return s;
}

template <typename Derived>
bool uses(const Eigen::MatrixBase<Derived>& m, Var v) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j).uses(v)) return true;
  return false;
}

/// True when every entry is a polynomial in ∂ alone.
bool is_del_only(const PolyMatrix& m);

Poly determinant(const PolyMatrix& m);

/// A polynomial is a unit of ℚ[∂] iff it is a nonzero constant.
inline bool is_unit(const Poly& p) { return p.is_constant() && !p.is_zero(); }

/// Inverse of a square matrix over ℚ[∂] with constant nonzero determinant,
/// via the adjugate.
PolyMatrix inverse(const PolyMatrix& m);

/// m^k; negative k uses the inverse.
PolyMatrix matrix_power(const PolyMatrix& m, int k);

PolyMatrix to_poly(const RationalMatrix& m);

/// Renders `c1*name1 + c2*name2 …` using the given basis names.
std::string vector_str(const PolyVector& v, const std::vector<std::string>& names);

}  // namespace bhlc
