#include "bhlc/constructions.hpp"

#include <algorithm>

namespace bhlc {

namespace {

PolyMatrix block_diag(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix m = zero_matrix(static_cast<int>(a.rows() + b.rows()), static_cast<int>(a.cols() + b.cols()));
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

PolyVector concat(const PolyVector& a, const PolyVector& b) {
  PolyVector v(a.size() + b.size());
  v << a, b;
  return v;
}

PolyMatrix checked_inverse(const PolyMatrix& m, const std::string& name) {
  try {
    return inverse(m);
  } catch (const NotInvertible& e) {
    throw PreconditionError(name + " is not invertible: " + e.what());
  }
}

}  // namespace

ConformalAlgebra yau_twist(const ConformalAlgebra& A, const PolyMatrix& a, const PolyMatrix& b) {
  const int n = A.rank();
  if (A.alpha() != identity_matrix(n) || A.beta() != identity_matrix(n))
    throw PreconditionError("twist input must have identity twists");
  CheckReport base = check_conformal_algebra(A);
  if (!base.passed()) throw PreconditionError("twist input is not a Lie conformal algebra", base);
  if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n)
    throw ShapeError("twist maps must be rank x rank");

  CheckReport hyp;
  const PolyMatrix comm = a * b - b * a;
  for (int j = 0; j < n; ++j) hyp.expect_zero("twist-maps-commute", {j}, comm.col(j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const PolyVector ei = A.basis_vector(i), ej = A.basis_vector(j);
      hyp.expect_zero("twist-a-multiplicative", {i, j},
                      apply_endo(a, A.bracket(i, j)) - bracket_eval(A, apply_endo(a, ei), apply_endo(a, ej)));
      hyp.expect_zero("twist-b-multiplicative", {i, j},
                      apply_endo(b, A.bracket(i, j)) - bracket_eval(A, apply_endo(b, ei), apply_endo(b, ej)));
    }
  if (!hyp.passed()) throw PreconditionError("twist hypothesis fails: " + hyp.failures.front().tag, hyp);

  ProductTable t(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = bracket_eval(A, a.col(i), b.col(j));
  return ConformalAlgebra(A.basis(), t, a, b);
}

ConformalAlgebra affinize(const BiHomLieAlgebra& L) {
  CheckReport rep = check_bihom_lie(L);
  if (!rep.passed()) throw PreconditionError("input is not a BiHom-Lie algebra: " + rep.failures.front().tag, rep);
  const int n = L.dim();
  ProductTable t(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = L.bracket(i, j).unaryExpr([](const Rational& r) { return Poly(r); });
  return ConformalAlgebra(L.basis(), t, to_poly(L.alpha()), to_poly(L.beta()));
}

ConformalAlgebra semidirect_product(const ConformalAlgebra& A, const ConformalModule& M) {
  const int n = A.rank();
  const int m = M.rank();
  const PolyMatrix alpha_inv = checked_inverse(A.alpha(), "alpha");
  checked_inverse(A.beta(), "beta");
  checked_inverse(M.alpha(), "alphaM");
  const PolyMatrix betaM_inv = checked_inverse(M.beta(), "betaM");
  const PolyMatrix left_twist = alpha_inv * A.beta();
  const PolyMatrix right_twist = M.alpha() * betaM_inv;

  ProductTable t(n + m, n + m, n + m);
  const PolyVector zero_m = zero_vector(m);
  const PolyVector zero_n = zero_vector(n);
  const Poly reflected = reflect_spectral(slot(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = concat(A.bracket(i, j), zero_m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      t(i, n + j) = concat(zero_n, M.action()(i, j));
      const PolyVector v = module_action_eval(M, left_twist.col(i), right_twist.col(j), reflected);
      t(n + j, i) = concat(zero_n, -v);
    }
  std::vector<std::string> names = A.basis();
  for (std::string v : M.basis()) {
    while (std::find(names.begin(), names.end(), v) != names.end()) v += "'";
    names.push_back(v);
  }
  return ConformalAlgebra(names, t, block_diag(A.alpha(), M.alpha()), block_diag(A.beta(), M.beta()));
}

ConformalAlgebra derivation_extension(const ConformalAlgebra& A, const ConformalLinearMap& D,
                                      const std::string& line_name) {
  const int n = A.rank();
  if (D.rank() != n || D.entries.rows() != n || D.slot != 0)
    throw ShapeError("derivation_extension: map must be rank x rank in l0");
  checked_inverse(A.alpha(), "alpha");
  const PolyMatrix beta_inv = checked_inverse(A.beta(), "beta");

  CheckReport hyp;
  for (int j = 0; j < n; ++j) {
    const PolyVector e = A.basis_vector(j);
    hyp.expect_zero("map-alpha-commute", {j},
                    clm_apply(D, apply_endo(A.alpha(), e)) - apply_endo(A.alpha(), clm_apply(D, e)));
    hyp.expect_zero("map-beta-commute", {j},
                    clm_apply(D, apply_endo(A.beta(), e)) - apply_endo(A.beta(), clm_apply(D, e)));
  }
  if (!hyp.passed()) throw PreconditionError("map does not commute with the twists", hyp);

  const PolyMatrix ab_inv = A.alpha() * beta_inv;
  const Poly reflected = reflect_spectral(slot(0));
  ProductTable t(n + 1, n + 1, n + 1);
  const PolyVector zero1 = zero_vector(1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = concat(A.bracket(i, j), zero1);
  for (int j = 0; j < n; ++j) {
    t(n, j) = concat(D.entries.col(j), zero1);
    t(j, n) = concat(-clm_apply(D, ab_inv.col(j), reflected), zero1);
  }
  std::vector<std::string> names = A.basis();
  names.push_back(line_name);
  return ConformalAlgebra(names, t, block_diag(A.alpha(), identity_matrix(1)),
                          block_diag(A.beta(), identity_matrix(1)));
}

}  // namespace bhlc
