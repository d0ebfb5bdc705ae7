#include "bhlc/linalg.hpp"

namespace bhlc {

void PolyConstraints::set_column(int col, const std::vector<Poly>& residuals) {
  for (std::size_t i = 0; i < residuals.size(); ++i)
    for (const auto& [m, c] : residuals[i].terms()) rows_[{i, m}][col] = c;
}

Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic> PolyConstraints::kernel() const {
  RowReducer<Rational> red(unknowns_);
  for (const auto& [key, row] : rows_) {
    red.add(row);
    if (red.rank() == unknowns_) break;
  }
  return red.nullspace();
}

}  // namespace bhlc
