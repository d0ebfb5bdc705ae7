#include "bhlc/deformation.hpp"

#include "bhlc/linalg.hpp"

namespace bhlc {

namespace {

BracketFn base_fn(const ConformalAlgebra& A) {
  return [&A](const PolyVector& a, const PolyVector& b, const Poly& s) { return bracket_eval(A, a, b, s); };
}

BracketFn table_fn(const ProductTable& t) {
  return [&t](const PolyVector& a, const PolyVector& b, const Poly& s) { return lambda_product(t, a, b, s); };
}

void require_shape(const ConformalAlgebra& A, const PolyMatrix& f) {
  if (f.rows() != A.rank() || f.cols() != A.rank()) throw ShapeError("operator must be rank x rank");
  if (!is_del_only(f)) throw ShapeError("operator entries may only use del");
}

void require_commuting(const ConformalAlgebra& A, const PolyMatrix& f) {
  CheckReport rep = check_commutes_with_twists(A, f);
  if (!rep.passed()) throw PreconditionError("operator does not commute with the twists", rep);
}

PolyVector t_coefficient(const PolyVector& v, int power) {
  return v.unaryExpr([power](const Poly& p) { return coefficient_of(p, Var::t(), power); });
}

}  // namespace

PolyVector deformed_bracket_eval(const FormalDeformation& F, const PolyVector& a,
                                 const PolyVector& b, const Poly& spectral) {
  return bracket_eval(F.base, a, b, spectral) + scaled(lambda_product(F.psi, a, b, spectral), tvar());
}

CheckReport check_deformation(const FormalDeformation& F) {
  const ConformalAlgebra& A = F.base;
  const int n = A.rank();
  if (F.psi.left() != n || F.psi.right() != n || F.psi.out() != n)
    throw ShapeError("deformation datum must be rank x rank x rank");
  CheckReport rep;
  const BracketFn p = base_fn(A);
  const BracketFn psi = table_fn(F.psi);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      rep.expect_zero("deformation-skew", {i, j},
                      skew_residual(psi, A.alpha(), A.beta(), A.basis_vector(i), A.basis_vector(j)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const PolyVector a = A.basis_vector(i), b = A.basis_vector(j), c = A.basis_vector(k);
        rep.expect_zero("deformation-jacobi-t2", {i, j, k},
                        jacobi_residual(psi, psi, A.alpha(), A.beta(), a, b, c));
        rep.expect_zero("deformation-jacobi-t1", {i, j, k},
                        jacobi_residual(p, psi, A.alpha(), A.beta(), a, b, c) +
                            jacobi_residual(psi, p, A.alpha(), A.beta(), a, b, c));
      }
  return rep;
}

CheckReport check_commutes_with_twists(const ConformalAlgebra& A, const PolyMatrix& f) {
  require_shape(A, f);
  CheckReport rep;
  const PolyMatrix ca = f * A.alpha() - A.alpha() * f;
  const PolyMatrix cb = f * A.beta() - A.beta() * f;
  for (int j = 0; j < A.rank(); ++j) {
    rep.expect_zero("operator-alpha-commute", {j}, ca.col(j));
    rep.expect_zero("operator-beta-commute", {j}, cb.col(j));
  }
  return rep;
}

BilinearDatum nijenhuis_bracket(const ConformalAlgebra& A, const PolyMatrix& f) {
  require_commuting(A, f);
  const int n = A.rank();
  BilinearDatum psi(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      psi(i, j) = bracket_eval(A, f.col(i), A.basis_vector(j)) + bracket_eval(A, A.basis_vector(i), f.col(j)) -
                  apply_endo(f, A.bracket(i, j));
  return psi;
}

CheckReport check_nijenhuis(const ConformalAlgebra& A, const PolyMatrix& f) {
  const BilinearDatum psi = nijenhuis_bracket(A, f);
  CheckReport rep;
  for (int i = 0; i < A.rank(); ++i)
    for (int j = 0; j < A.rank(); ++j)
      rep.expect_zero("nijenhuis", {i, j}, bracket_eval(A, f.col(i), f.col(j)) - apply_endo(f, psi(i, j)));
  return rep;
}

FormalDeformation deformation_from_nijenhuis(const ConformalAlgebra& A, const PolyMatrix& f) {
  CheckReport rep = check_nijenhuis(A, f);
  if (!rep.passed()) throw PreconditionError("operator is not a Nijenhuis operator", rep);
  return {A, nijenhuis_bracket(A, f)};
}

CheckReport check_triviality(const FormalDeformation& F, const PolyMatrix& f) {
  const ConformalAlgebra& A = F.base;
  require_shape(A, f);
  const PolyMatrix T = identity_matrix(A.rank()) + scaled(f, tvar());
  CheckReport rep;
  static const char* tags[] = {"triviality-t0", "triviality-t1", "triviality-t2"};
  for (int i = 0; i < A.rank(); ++i)
    for (int j = 0; j < A.rank(); ++j) {
      const PolyVector a = A.basis_vector(i), b = A.basis_vector(j);
      const PolyVector lhs = apply_endo(T, deformed_bracket_eval(F, a, b));
      const PolyVector rhs = bracket_eval(A, apply_endo(T, a), apply_endo(T, b));
      const PolyVector diff = lhs - rhs;
      for (int d = 0; d <= 2; ++d) rep.expect_zero(tags[d], {i, j}, t_coefficient(diff, d));
      for (Eigen::Index k = 0; k < diff.size(); ++k)
        if (diff(k).degree_in(Var::t()) > 2) rep.notes.push_back("residual of t-degree above 2");
    }
  return rep;
}

std::vector<PolyMatrix> commutant_basis(const ConformalAlgebra& A, int degree_bound) {
  if (degree_bound < 0) throw std::invalid_argument("degree bound must be nonnegative");
  const int n = A.rank();
  const int per = degree_bound + 1;
  const int unknowns = n * n * per;
  auto unit = [&](int c) {
    PolyMatrix m = zero_matrix(n, n);
    const int cell = c / per;
    m(cell / n, cell % n) = Poly::var(Var::del(), c % per);
    return m;
  };
  PolyConstraints sys(unknowns);
  for (int c = 0; c < unknowns; ++c) {
    const PolyMatrix f = unit(c);
    const PolyMatrix ca = f * A.alpha() - A.alpha() * f;
    const PolyMatrix cb = f * A.beta() - A.beta() * f;
    std::vector<Poly> res(ca.data(), ca.data() + ca.size());
    res.insert(res.end(), cb.data(), cb.data() + cb.size());
    sys.set_column(c, res);
  }
  const RationalMatrix ker = sys.kernel();
  std::vector<PolyMatrix> out;
  for (Eigen::Index k = 0; k < ker.cols(); ++k) {
    PolyMatrix m = zero_matrix(n, n);
    for (int c = 0; c < unknowns; ++c)
      if (!ker(c, k).is_zero()) m += scaled(unit(c), Poly(ker(c, k)));
    out.push_back(m);
  }
  return out;
}

std::vector<PolyMatrix> find_nijenhuis_candidates(const ConformalAlgebra& A, std::size_t limit) {
  const auto basis = commutant_basis(A, 0);
  const int n = A.rank();
  std::vector<PolyMatrix> found;
  if (basis.empty()) return found;
  static const int choices[] = {0, 1, -1, 2};
  std::vector<int> pick(basis.size(), 0);
  while (found.size() < limit) {
    int k = static_cast<int>(pick.size()) - 1;
    while (k >= 0 && pick[k] == 3) pick[k--] = 0;
    if (k < 0) break;
    ++pick[k];
    PolyMatrix f = zero_matrix(n, n);
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (choices[pick[b]] != 0) f += scaled(basis[b], Poly(choices[pick[b]]));
    const Poly c = n > 0 ? f(0, 0) : Poly();
    if (f == scaled(identity_matrix(n), c)) continue;
    if (check_nijenhuis(A, f).passed()) found.push_back(f);
  }
  return found;
}

}  // namespace bhlc
