#pragma once

// Exact linear algebra over a field scalar (Rational in practice): sparse
// incremental row reduction, nullspaces and span membership.

#include "bhlc/poly.hpp"

#include <Eigen/Core>

#include <map>
#include <utility>
#include <vector>

namespace bhlc {

template <typename Scalar>
using SparseRow = std::map<int, Scalar>;

/// Maintains the reduced row echelon form of the span of the rows added so
/// far. Every stored row has pivot coefficient 1 and no other stored row has
/// a nonzero entry in its pivot column.
template <typename Scalar>
class RowReducer {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit RowReducer(int cols) : cols_(cols) {}

  int cols() const { return cols_; }
  int rank() const { return static_cast<int>(pivots_.size()); }

  /// Reduces `row` against the stored rows; what is left (possibly empty).
  SparseRow<Scalar> reduce(SparseRow<Scalar> row) const {
    auto it = row.begin();
    while (it != row.end()) {
      auto piv = pivots_.find(it->first);
      if (piv == pivots_.end()) {
        ++it;
        continue;
      }
      const Scalar factor = it->second;
      const int col = it->first;
      for (const auto& [c, v] : piv->second) axpy(row, c, -(factor * v));
      it = row.upper_bound(col);
    }
    return row;
  }

  /// Adds a row; returns true when it was independent of the stored rows.
  bool add(SparseRow<Scalar> row) {
    row = reduce(std::move(row));
    if (row.empty()) return false;
    const int pivot = row.begin()->first;
    const Scalar inv = Scalar(1) / row.begin()->second;
    for (auto& [c, v] : row) v *= inv;
    for (auto& [p, other] : pivots_) {
      auto hit = other.find(pivot);
      if (hit == other.end()) continue;
      const Scalar factor = hit->second;
      for (const auto& [c, v] : row) axpy(other, c, -(factor * v));
    }
    pivots_.emplace(pivot, std::move(row));
    return true;
  }

  bool add(const Vector& v) { return add(to_sparse(v)); }

  bool contains(const Vector& v) const { return reduce(to_sparse(v)).empty(); }

  /// Columns form a basis of {x : R x = 0}; one column per free variable, in
  /// increasing free-column order with that free entry set to 1.
  Matrix nullspace() const {
    std::vector<int> free;
    for (int c = 0; c < cols_; ++c)
      if (!pivots_.count(c)) free.push_back(c);
    Matrix basis = Matrix::Constant(cols_, static_cast<Eigen::Index>(free.size()), Scalar(0));
    for (std::size_t k = 0; k < free.size(); ++k) {
      basis(free[k], static_cast<Eigen::Index>(k)) = Scalar(1);
      for (const auto& [p, row] : pivots_) {
        auto hit = row.find(free[k]);
        if (hit != row.end()) basis(p, static_cast<Eigen::Index>(k)) = -hit->second;
      }
    }
    return basis;
  }

  /// Stored rows as the rows of a dense matrix, ordered by pivot.
  Matrix rows() const {
    Matrix m = Matrix::Constant(rank(), cols_, Scalar(0));
    Eigen::Index r = 0;
    for (const auto& [p, row] : pivots_) {
      for (const auto& [c, v] : row) m(r, c) = v;
      ++r;
    }
    return m;
  }

  static SparseRow<Scalar> to_sparse(const Vector& v) {
    SparseRow<Scalar> row;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (!(v(i) == Scalar(0))) row.emplace(static_cast<int>(i), v(i));
    return row;
  }

 private:
  static void axpy(SparseRow<Scalar>& row, int col, const Scalar& v) {
    auto [it, inserted] = row.try_emplace(col, v);
    if (!inserted) {
      it->second += v;
      if (it->second == Scalar(0)) row.erase(it);
    }
  }

  int cols_;
  std::map<int, SparseRow<Scalar>> pivots_;
};

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> nullspace(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  RowReducer<Scalar> red(static_cast<int>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) red.add(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>(m.row(i).transpose()));
  return red.nullspace();
}

template <typename Derived>
int rank(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  RowReducer<Scalar> red(static_cast<int>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) red.add(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>(m.row(i).transpose()));
  return red.rank();
}

/// Homogeneous linear system assembled column by column from polynomial
/// residuals: unknown j contributes residual list r_j, and each distinct
/// (residual position, monomial) pair is one scalar equation.
class PolyConstraints {
 public:
  explicit PolyConstraints(int unknowns) : unknowns_(unknowns) {}

  void set_column(int col, const std::vector<Poly>& residuals);

  int unknowns() const { return unknowns_; }

  /// Basis of the solution space, one column per basis vector.
  Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic> kernel() const;

 private:
  int unknowns_;
  std::map<std::pair<std::size_t, Monomial>, SparseRow<Rational>> rows_;
};

}  // namespace bhlc
