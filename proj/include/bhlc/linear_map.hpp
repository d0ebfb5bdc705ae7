#pragma once

// Conformal linear maps D_λ : R → R[λ] on a free ℚ[∂]-module, stored by
// their values on the basis.

#include "bhlc/core.hpp"

namespace bhlc {

/// Column j holds D(e_j) with the map's own spectral variable l<slot>.
/// Entries may mention further slots, which then act as parameters: the
/// commutator family [D_λ E]_μ is stored with slot 1 (μ) and parameter l0 (λ).
struct ConformalLinearMap {
  PolyMatrix entries;
  int slot = 0;

  int rank() const { return static_cast<int>(entries.cols()); }
  Poly spectral() const { return bhlc::slot(slot); }

  static ConformalLinearMap zero(int n) { return {zero_matrix(n, n), 0}; }
  static ConformalLinearMap from_endo(const PolyMatrix& m) { return {m, 0}; }

  bool is_zero() const { return bhlc::is_zero(entries); }

  friend bool operator==(const ConformalLinearMap&, const ConformalLinearMap&) = default;
};

/// A conformal linear map in μ depending polynomially on the parameter λ.
using CLMFamily = ConformalLinearMap;

/// D_Λ(a): a's coefficients shifted ∂ ↦ ∂+Λ, D's spectral variable ↦ Λ.
PolyVector clm_apply(const ConformalLinearMap& D, const PolyVector& a, const Poly& spectral);
inline PolyVector clm_apply(const ConformalLinearMap& D, const PolyVector& a) {
  return clm_apply(D, a, D.spectral());
}

/// (∂D)_λ = −λ D_λ.
ConformalLinearMap clm_partial(const ConformalLinearMap& D);

ConformalLinearMap operator+(const ConformalLinearMap& a, const ConformalLinearMap& b);
ConformalLinearMap operator-(const ConformalLinearMap& a, const ConformalLinearMap& b);
ConformalLinearMap operator*(const Rational& c, const ConformalLinearMap& a);

/// D∘E for a ℚ[∂]-linear E (used for the twisted maps D∘α, D∘β).
ConformalLinearMap compose_endo(const ConformalLinearMap& D, const PolyMatrix& E);
/// E∘D.
ConformalLinearMap endo_compose(const PolyMatrix& E, const ConformalLinearMap& D);

/// [D_λ E]_μ(a) = D_λ(E_{μ−λ} a) − E_{μ−λ}(D_λ a) for two maps with
/// spectral slot 0; the result has spectral slot 1 and parameter l0.
CLMFamily clm_commutator(const ConformalLinearMap& D, const ConformalLinearMap& E);

/// Evaluates a family at a concrete λ (a rational or any ∂-free poly),
/// giving a map in l0.
ConformalLinearMap specialize(const CLMFamily& F, const Poly& lambda);

/// Entrywise polynomial text, row-major.
std::vector<std::vector<std::string>> clm_strings(const ConformalLinearMap& D);

}  // namespace bhlc
