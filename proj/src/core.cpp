#include "bhlc/core.hpp"

#include "bhlc/linalg.hpp"

#include <algorithm>

namespace bhlc {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ShapeError(what);
}

bool only_vars(const Poly& p, std::initializer_list<Var> allowed) {
  for (const auto& [m, c] : p.terms())
    for (int i = 0; i < kNumVars; ++i) {
      if (m.exp[i] == 0) continue;
      if (std::none_of(allowed.begin(), allowed.end(), [&](Var v) { return v.index() == i; }))
        return false;
    }
  return true;
}

void validate_table(const ProductTable& t, const std::string& what) {
  for (int i = 0; i < t.left(); ++i)
    for (int j = 0; j < t.right(); ++j) {
      require(t(i, j).size() == t.out(), what + ": entry has wrong length");
      for (Eigen::Index k = 0; k < t(i, j).size(); ++k)
        require(only_vars(t(i, j)(k), {Var::del(), Var::slot(0)}),
                what + ": structure polynomial may only use del and l0");
    }
}

void validate_twist(const PolyMatrix& m, int n, const std::string& what) {
  require(m.rows() == n && m.cols() == n, what + " must be " + std::to_string(n) + "x" +
                                              std::to_string(n));
  require(is_del_only(m), what + " entries may only use del");
}

}  // namespace

ProductTable::ProductTable(int left, int right, int out)
    : left_(left), right_(right), out_(out),
      entries_(static_cast<std::size_t>(left) * right, zero_vector(out)) {}

bool ProductTable::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const PolyVector& v) { return bhlc::is_zero(v); });
}

int ProductTable::total_degree() const {
  int d = -1;
  for (const auto& v : entries_) d = std::max(d, bhlc::total_degree(v));
  return d;
}

ProductTable ProductTable::operator+(const ProductTable& o) const {
  require(left_ == o.left_ && right_ == o.right_ && out_ == o.out_, "table shapes differ");
  ProductTable r = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] + o.entries_[i];
  return r;
}

ProductTable ProductTable::operator*(const Poly& f) const {
  ProductTable r = *this;
  for (auto& v : r.entries_) v = scaled(v, f);
  return r;
}

bool operator==(const ProductTable& a, const ProductTable& b) {
  return a.left_ == b.left_ && a.right_ == b.right_ && a.out_ == b.out_ && a.entries_ == b.entries_;
}

Poly reflect_spectral(const Poly& spectral) { return -del() - spectral; }

PolyVector lambda_product(const ProductTable& table, const PolyVector& u, const PolyVector& v,
                          const Poly& spectral) {
  if (u.size() != table.left() || v.size() != table.right())
    throw ShapeError("lambda product: argument length mismatch");
  PolyVector out = zero_vector(table.out());
  const Substitution left_sub{{Var::del(), -spectral}};
  const Substitution right_sub{{Var::del(), del() + spectral}};
  const Substitution table_sub{{Var::slot(0), spectral}};
  std::vector<Poly> right(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j)
    if (!v(j).is_zero()) right[j] = substitute(v(j), right_sub);
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (u(i).is_zero()) continue;
    const Poly left = substitute(u(i), left_sub);
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      if (right[j].is_zero()) continue;
      const PolyVector& entry = table(static_cast<int>(i), static_cast<int>(j));
      if (bhlc::is_zero(entry)) continue;
      const Poly coef = left * right[j];
      for (Eigen::Index k = 0; k < entry.size(); ++k)
        if (!entry(k).is_zero()) out(k) += coef * substitute(entry(k), table_sub);
    }
  }
  return out;
}

// --- ConformalAlgebra ----------------------------------------------------------

ConformalAlgebra::ConformalAlgebra(std::vector<std::string> basis, ProductTable bracket,
                                   PolyMatrix alpha, PolyMatrix beta)
    : basis_(std::move(basis)), bracket_(std::move(bracket)), alpha_(std::move(alpha)),
      beta_(std::move(beta)) {
  const int n = rank();
  require(bracket_.left() == n && bracket_.right() == n && bracket_.out() == n,
          "bracket table must be rank x rank x rank");
  validate_table(bracket_, "bracket");
  validate_twist(alpha_, n, "alpha");
  validate_twist(beta_, n, "beta");
}

ConformalAlgebra ConformalAlgebra::abelian(std::vector<std::string> basis) {
  const int n = static_cast<int>(basis.size());
  return ConformalAlgebra(std::move(basis), ProductTable(n, n, n), identity_matrix(n),
                          identity_matrix(n));
}

bool ConformalAlgebra::is_regular() const {
  return is_unit(determinant(alpha_)) && is_unit(determinant(beta_));
}

ConformalModule::ConformalModule(ConformalAlgebra parent, std::vector<std::string> basis,
                                 ProductTable action, PolyMatrix alpha, PolyMatrix beta)
    : parent_(std::move(parent)), basis_(std::move(basis)), action_(std::move(action)),
      alpha_(std::move(alpha)), beta_(std::move(beta)) {
  const int m = rank();
  require(action_.left() == parent_.rank() && action_.right() == m && action_.out() == m,
          "action table must be (algebra rank) x (module rank) x (module rank)");
  validate_table(action_, "action");
  validate_twist(alpha_, m, "alphaM");
  validate_twist(beta_, m, "betaM");
}

BiHomLieAlgebra::BiHomLieAlgebra(std::vector<std::string> basis,
                                 std::vector<RationalVector> structure, RationalMatrix alpha,
                                 RationalMatrix beta)
    : basis_(std::move(basis)), structure_(std::move(structure)), alpha_(std::move(alpha)),
      beta_(std::move(beta)) {
  const int n = dim();
  require(structure_.size() == static_cast<std::size_t>(n) * n, "structure must have dim^2 entries");
  for (const auto& v : structure_) require(v.size() == n, "structure vector has wrong length");
  require(alpha_.rows() == n && alpha_.cols() == n, "alpha has wrong shape");
  require(beta_.rows() == n && beta_.cols() == n, "beta has wrong shape");
}

RationalVector BiHomLieAlgebra::bracket(const RationalVector& a, const RationalVector& b) const {
  RationalVector out = RationalVector::Constant(dim(), Rational(0));
  for (int i = 0; i < dim(); ++i) {
    if (a(i).is_zero()) continue;
    for (int j = 0; j < dim(); ++j) {
      if (b(j).is_zero()) continue;
      const Rational c = a(i) * b(j);
      for (int k = 0; k < dim(); ++k) out(k) += c * bracket(i, j)(k);
    }
  }
  return out;
}

// --- CheckReport ---------------------------------------------------------------

bool CheckReport::has_failure(std::string_view tag) const { return first_failure(tag) != nullptr; }

const Violation* CheckReport::first_failure(std::string_view tag) const {
  for (const auto& f : failures)
    if (f.tag == tag) return &f;
  return nullptr;
}

void CheckReport::expect_zero(std::string_view tag, std::vector<int> witness, PolyVector residual) {
  ++identities_checked;
  if (!bhlc::is_zero(residual))
    failures.push_back({std::string(tag), std::move(witness), std::move(residual)});
}

void CheckReport::merge(CheckReport other) {
  for (auto& f : other.failures) failures.push_back(std::move(f));
  for (auto& n : other.notes) notes.push_back(std::move(n));
  identities_checked += other.identities_checked;
}

// --- evaluation ------------------------------------------------------------------

PolyVector bracket_eval(const ConformalAlgebra& A, const PolyVector& a, const PolyVector& b,
                        const Poly& spectral) {
  if (a.size() != A.rank() || b.size() != A.rank())
    throw ShapeError("bracket_eval: element rank does not match algebra rank");
  return lambda_product(A.bracket(), a, b, spectral);
}

PolyVector module_action_eval(const ConformalModule& M, const PolyVector& a, const PolyVector& v,
                              const Poly& spectral) {
  if (a.size() != M.parent().rank() || v.size() != M.rank())
    throw ShapeError("module_action_eval: shape mismatch");
  return lambda_product(M.action(), a, v, spectral);
}

PolyVector apply_endo(const PolyMatrix& E, const PolyVector& a) {
  if (E.cols() != a.size()) throw ShapeError("apply_endo: dimension mismatch");
  PolyVector out = zero_vector(static_cast<int>(E.rows()));
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    if (a(j).is_zero()) continue;
    for (Eigen::Index i = 0; i < E.rows(); ++i)
      if (!E(i, j).is_zero()) out(i) += E(i, j) * a(j);
  }
  return out;
}

PolyMatrix endo_power_compose(const ConformalAlgebra& A, int k, int l) {
  return matrix_power(A.alpha(), k) * matrix_power(A.beta(), l);
}

// --- residuals ---------------------------------------------------------------------

PolyVector skew_residual(const BracketFn& B, const PolyMatrix& alpha, const PolyMatrix& beta,
                         const PolyVector& a, const PolyVector& b) {
  const Poly l = slot(0);
  return B(apply_endo(beta, a), apply_endo(alpha, b), l) +
         B(apply_endo(beta, b), apply_endo(alpha, a), reflect_spectral(l));
}

PolyVector jacobi_residual(const BracketFn& outer, const BracketFn& inner, const PolyMatrix& alpha,
                           const PolyMatrix& beta, const PolyVector& a, const PolyVector& b,
                           const PolyVector& c) {
  const Poly l = slot(0);
  const Poly m = slot(1);
  const PolyVector ab_a = apply_endo(alpha, apply_endo(beta, a));
  PolyVector lhs = outer(ab_a, inner(b, c, m), l);
  PolyVector r1 = outer(inner(apply_endo(beta, a), b, l), apply_endo(beta, c), l + m);
  PolyVector r2 = outer(apply_endo(beta, b), inner(apply_endo(alpha, a), c, l), m);
  return lhs - r1 - r2;
}

// --- checkers ------------------------------------------------------------------------

CheckReport check_conformal_algebra(const ConformalAlgebra& A) {
  CheckReport rep;
  const int n = A.rank();
  BracketFn B = [&A](const PolyVector& a, const PolyVector& b, const Poly& s) {
    return bracket_eval(A, a, b, s);
  };
  const PolyMatrix comm = A.alpha() * A.beta() - A.beta() * A.alpha();
  for (int j = 0; j < n; ++j) rep.expect_zero("alpha-beta-commute", {j}, comm.col(j));

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const PolyVector ei = A.basis_vector(i), ej = A.basis_vector(j);
      const PolyVector br = A.bracket(i, j);
      rep.expect_zero("alpha-multiplicative", {i, j},
                      apply_endo(A.alpha(), br) -
                          B(apply_endo(A.alpha(), ei), apply_endo(A.alpha(), ej), slot(0)));
      rep.expect_zero("beta-multiplicative", {i, j},
                      apply_endo(A.beta(), br) -
                          B(apply_endo(A.beta(), ei), apply_endo(A.beta(), ej), slot(0)));
      rep.expect_zero("skew", {i, j}, skew_residual(B, A.alpha(), A.beta(), ei, ej));
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        rep.expect_zero("jacobi", {i, j, k},
                        jacobi_residual(B, B, A.alpha(), A.beta(), A.basis_vector(i),
                                        A.basis_vector(j), A.basis_vector(k)));
  rep.notes.push_back("sesquilinearity holds by construction of the evaluation rule");
  return rep;
}

CheckReport check_module(const ConformalModule& M) {
  CheckReport rep;
  const ConformalAlgebra& A = M.parent();
  const int n = A.rank();
  const int m = M.rank();
  const PolyMatrix comm = M.alpha() * M.beta() - M.beta() * M.alpha();
  for (int j = 0; j < m; ++j) rep.expect_zero("module-twists-commute", {j}, comm.col(j));

  const Poly l = slot(0);
  const Poly mu = slot(1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      const PolyVector a = A.basis_vector(i);
      const PolyVector v = unit_vector(m, j);
      const PolyVector av = module_action_eval(M, a, v, l);
      rep.expect_zero("module-alpha-equivariant", {i, j},
                      apply_endo(M.alpha(), av) -
                          module_action_eval(M, apply_endo(A.alpha(), a), apply_endo(M.alpha(), v), l));
      rep.expect_zero("module-beta-equivariant", {i, j},
                      apply_endo(M.beta(), av) -
                          module_action_eval(M, apply_endo(A.beta(), a), apply_endo(M.beta(), v), l));
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < m; ++k) {
        const PolyVector a = A.basis_vector(i);
        const PolyVector b = A.basis_vector(j);
        const PolyVector v = unit_vector(m, k);
        const PolyVector ab_a = apply_endo(A.alpha(), apply_endo(A.beta(), a));
        PolyVector lhs = module_action_eval(M, ab_a, module_action_eval(M, b, v, mu), l) -
                         module_action_eval(M, apply_endo(A.beta(), b),
                                            module_action_eval(M, apply_endo(A.alpha(), a), v, l), mu);
        PolyVector rhs = module_action_eval(M, bracket_eval(A, apply_endo(A.beta(), a), b, l),
                                            apply_endo(M.beta(), v), l + mu);
        rep.expect_zero("module-jacobi", {i, j, k}, lhs - rhs);
      }
  return rep;
}

ConformalModule adjoint_module(const ConformalAlgebra& A) {
  return ConformalModule(A, A.basis(), A.bracket(), A.alpha(), A.beta());
}

std::vector<PolyVector> center(const ConformalAlgebra& A, int degree_bound) {
  if (degree_bound < 0) throw std::invalid_argument("center: degree bound must be nonnegative");
  const int n = A.rank();
  const int per = degree_bound + 1;
  const int unknowns = n * per;
  auto element = [&](int col) {
    PolyVector a = zero_vector(n);
    a(col / per) = Poly::var(Var::del(), col % per);
    return a;
  };
  PolyConstraints sys(unknowns);
  for (int col = 0; col < unknowns; ++col) {
    const PolyVector a = element(col);
    std::vector<Poly> res;
    for (int j = 0; j < n; ++j) {
      const PolyVector left = bracket_eval(A, a, A.basis_vector(j));
      const PolyVector right = bracket_eval(A, A.basis_vector(j), a);
      res.insert(res.end(), left.begin(), left.end());
      res.insert(res.end(), right.begin(), right.end());
    }
    sys.set_column(col, res);
  }
  const RationalMatrix ker = sys.kernel();
  std::vector<PolyVector> out;
  for (Eigen::Index c = 0; c < ker.cols(); ++c) {
    PolyVector a = zero_vector(n);
    for (int col = 0; col < unknowns; ++col)
      if (!ker(col, c).is_zero()) a(col / per) += Poly::var(Var::del(), col % per) * ker(col, c);
    out.push_back(a);
  }
  return out;
}

CheckReport check_bihom_lie(const BiHomLieAlgebra& L) {
  CheckReport rep;
  const int n = L.dim();
  auto to_poly_vec = [](const RationalVector& v) {
    return PolyVector(v.unaryExpr([](const Rational& r) { return Poly(r); }));
  };
  auto unit = [n](int i) {
    RationalVector v = RationalVector::Constant(n, Rational(0));
    v(i) = Rational(1);
    return v;
  };
  const RationalMatrix& al = L.alpha();
  const RationalMatrix& be = L.beta();
  const RationalMatrix comm = al * be - be * al;
  for (int j = 0; j < n; ++j) rep.expect_zero("alpha-beta-commute", {j}, to_poly_vec(comm.col(j)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const RationalVector a = unit(i), b = unit(j);
      const RationalVector br = L.bracket(a, b);
      rep.expect_zero("alpha-multiplicative", {i, j},
                      to_poly_vec(RationalVector(al * br) - L.bracket(al * a, al * b)));
      rep.expect_zero("beta-multiplicative", {i, j},
                      to_poly_vec(RationalVector(be * br) - L.bracket(be * a, be * b)));
      rep.expect_zero("skew", {i, j},
                      to_poly_vec(L.bracket(be * a, al * b) + L.bracket(be * b, al * a)));
    }
  const RationalMatrix be2 = be * be;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const RationalVector a = unit(i), b = unit(j), c = unit(k);
        RationalVector sum = L.bracket(be2 * a, L.bracket(be * b, al * c)) +
                             L.bracket(be2 * b, L.bracket(be * c, al * a)) +
                             L.bracket(be2 * c, L.bracket(be * a, al * b));
        rep.expect_zero("jacobi", {i, j, k}, to_poly_vec(sum));
      }
  return rep;
}

}  // namespace bhlc
