#pragma once

#include "bhlc/core.hpp"

namespace fixtures {

using namespace bhlc;

inline PolyMatrix diag(std::initializer_list<Poly> d) {
  PolyMatrix m = zero_matrix(static_cast<int>(d.size()), static_cast<int>(d.size()));
  int i = 0;
  for (const auto& p : d) { m(i, i) = p; ++i; }
  return m;
}

inline PolyVector vec(std::initializer_list<Poly> xs) {
  PolyVector v(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (const auto& p : xs) v(i++) = p;
  return v;
}

// [x_λ y] = 3y, [y_λ x] = -2y, α = diag(1,2), β = diag(1,3).
inline ConformalAlgebra twisted2() {
  ProductTable t(2, 2, 2);
  t(0, 1) = vec({0, 3});
  t(1, 0) = vec({0, -2});
  return ConformalAlgebra({"x", "y"}, t, diag({1, 2}), diag({1, 3}));
}

// [x_λ y] = y, [y_λ x] = -y, untwisted.
inline ConformalAlgebra current2() {
  ProductTable t(2, 2, 2);
  t(0, 1) = vec({0, 1});
  t(1, 0) = vec({0, -1});
  return ConformalAlgebra({"x", "y"}, t, identity_matrix(2), identity_matrix(2));
}

// [x_λ y] = y and [y_λ x] = +y: skew fails at (x, y).
inline ConformalAlgebra broken_skew() {
  ProductTable t(2, 2, 2);
  t(0, 1) = vec({0, 1});
  t(1, 0) = vec({0, 1});
  return ConformalAlgebra({"x", "y"}, t, identity_matrix(2), identity_matrix(2));
}

// Virasoro-type rank one: [L_λ L] = (∂ + 2λ) L, untwisted.
inline ConformalAlgebra virasoro() {
  ProductTable t(1, 1, 1);
  t(0, 0) = vec({del() + slot(0) * Rational(2)});
  return ConformalAlgebra({"L"}, t, identity_matrix(1), identity_matrix(1));
}

}  // namespace fixtures
