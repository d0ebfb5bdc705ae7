#include "bhlc/linear_map.hpp"

namespace bhlc {

namespace {

void same_shape(const ConformalLinearMap& a, const ConformalLinearMap& b) {
  if (a.entries.rows() != b.entries.rows() || a.entries.cols() != b.entries.cols())
    throw ShapeError("conformal linear maps of different ranks");
  if (a.slot != b.slot) throw ShapeError("conformal linear maps with different spectral slots");
}

}  // namespace

PolyVector clm_apply(const ConformalLinearMap& D, const PolyVector& a, const Poly& spectral) {
  if (a.size() != D.entries.cols()) throw ShapeError("clm_apply: element rank mismatch");
  const Var own = Var::slot(D.slot);
  const Substitution shift{{Var::del(), del() + spectral}};
  const bool rename = spectral != D.spectral();
  PolyVector out = zero_vector(static_cast<int>(D.entries.rows()));
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    if (a(j).is_zero()) continue;
    const Poly coef = substitute(a(j), shift);
    for (Eigen::Index k = 0; k < D.entries.rows(); ++k) {
      const Poly& e = D.entries(k, j);
      if (e.is_zero()) continue;
      out(k) += (rename ? substitute(e, own, spectral) : e) * coef;
    }
  }
  return out;
}

ConformalLinearMap clm_partial(const ConformalLinearMap& D) {
  return {scaled(D.entries, -D.spectral()), D.slot};
}

ConformalLinearMap operator+(const ConformalLinearMap& a, const ConformalLinearMap& b) {
  same_shape(a, b);
  return {a.entries + b.entries, a.slot};
}

ConformalLinearMap operator-(const ConformalLinearMap& a, const ConformalLinearMap& b) {
  same_shape(a, b);
  return {a.entries - b.entries, a.slot};
}

ConformalLinearMap operator*(const Rational& c, const ConformalLinearMap& a) {
  return {scaled(a.entries, Poly(c)), a.slot};
}

ConformalLinearMap compose_endo(const ConformalLinearMap& D, const PolyMatrix& E) {
  if (E.rows() != D.entries.cols()) throw ShapeError("compose_endo: rank mismatch");
  ConformalLinearMap out{zero_matrix(static_cast<int>(D.entries.rows()), static_cast<int>(E.cols())),
                         D.slot};
  for (Eigen::Index j = 0; j < E.cols(); ++j) out.entries.col(j) = clm_apply(D, E.col(j));
  return out;
}

ConformalLinearMap endo_compose(const PolyMatrix& E, const ConformalLinearMap& D) {
  if (E.cols() != D.entries.rows()) throw ShapeError("endo_compose: rank mismatch");
  return {E * D.entries, D.slot};
}

CLMFamily clm_commutator(const ConformalLinearMap& D, const ConformalLinearMap& E) {
  if (D.slot != 0 || E.slot != 0) throw ShapeError("clm_commutator expects maps in l0");
  if (D.rank() != E.rank()) throw ShapeError("clm_commutator: rank mismatch");
  const int n = D.rank();
  const Poly lam = slot(0);
  const Poly shifted = slot(1) - slot(0);
  CLMFamily out{zero_matrix(n, n), 1};
  for (int j = 0; j < n; ++j) {
    const PolyVector e = unit_vector(n, j);
    out.entries.col(j) = clm_apply(D, clm_apply(E, e, shifted), lam) -
                         clm_apply(E, clm_apply(D, e, lam), shifted);
  }
  return out;
}

ConformalLinearMap specialize(const CLMFamily& F, const Poly& lambda) {
  if (F.slot != 1) throw ShapeError("specialize expects a family in l1");
  if (lambda.uses(Var::del())) throw ShapeError("specialize: value must not involve del");
  return {substitute(F.entries, Substitution{{Var::slot(0), lambda}, {Var::slot(1), slot(0)}}), 0};
}

std::vector<std::vector<std::string>> clm_strings(const ConformalLinearMap& D) {
  std::vector<std::vector<std::string>> out;
  for (Eigen::Index i = 0; i < D.entries.rows(); ++i) {
    std::vector<std::string> row;
    for (Eigen::Index j = 0; j < D.entries.cols(); ++j) row.push_back(D.entries(i, j).str());
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace bhlc
