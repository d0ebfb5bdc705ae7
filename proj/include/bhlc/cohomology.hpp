#pragma once

// Cochains of a BiHom-Lie conformal algebra with module coefficients, the
// differentials d and d_s, and degree-truncated cocycle computations.
//
// An n-cochain is stored by its values on basis tuples; the value at
// (i₁,…,iₙ) is a module vector whose entries use ∂ and the slots l1…ln.
// Evaluation on general arguments pulls f(∂) out of position k as f(−λ_k).

#include "bhlc/core.hpp"

#include <map>
#include <memory>
#include <optional>

namespace bhlc {

struct Cochain {
  std::shared_ptr<const ConformalModule> module;
  int arity = 0;
  std::map<std::vector<int>, PolyVector> values;  // zero values are not stored

  static Cochain zero(std::shared_ptr<const ConformalModule> M, int arity);

  const ConformalAlgebra& algebra() const { return module->parent(); }
  PolyVector value(const std::vector<int>& tuple) const;
  void set(const std::vector<int>& tuple, const PolyVector& v);
  bool is_zero() const { return values.empty(); }
  /// Largest total degree of any value entry (-1 for the zero cochain).
  int total_degree() const;

  Cochain& operator+=(const Cochain& o);
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator*(const Rational& c, const Cochain& g);
  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.arity == b.arity && a.values == b.values && *a.module == *b.module;
  }
};

/// All basis tuples of length n over rank r, lexicographic.
std::vector<std::vector<int>> basis_tuples(int rank, int n);

/// γ_{Λ₁,…,Λₙ}(a₁,…,aₙ). Arguments may carry slot variables of their own;
/// `spectral` defaults to (l1,…,ln).
PolyVector eval_cochain(const Cochain& g, const std::vector<PolyVector>& args,
                        const std::vector<Poly>& spectral);
PolyVector eval_cochain(const Cochain& g, const std::vector<PolyVector>& args);

/// Tags: cochain-skew (exchanging neighbours together with their slots),
/// cochain-alpha and cochain-beta (γ∘α = α_M∘γ, γ∘β = β_M∘γ; for n = 0 the
/// value must be fixed by α_M and β_M).
CheckReport validate_cochain(const Cochain& g);

/// dγ. Throws PreconditionError if the algebra is not regular or γ is invalid.
Cochain differential(const Cochain& g);

/// d_s on cochains with adjoint coefficients, where the first sum acts by
/// [α^{s+1}β^{n−1}(a)_λ ·] (and the 0-cochain case by [α^s(a)_λ m]).
Cochain differential_s(const Cochain& g, int s);

/// Tags: d-valid (dγ fails validation), d-squared (nonzero value of d(dγ)).
CheckReport check_d_squared(const Cochain& g, std::optional<int> s = std::nullopt);

/// Basis of the valid arity-n cochains with value entries of total degree
/// at most D in (∂, l1…ln).
std::vector<Cochain> cochain_space_basis(std::shared_ptr<const ConformalModule> M, int n,
                                         int degree_bound);

struct TruncatedCohomology {
  int arity = 0;
  int degree_bound = 0;
  int dim_cochains = 0;
  int dim_cocycles = 0;
  /// dim of d(C^{n−1}_{≤D}) ∩ C^n_{≤D}.
  int dim_coboundaries_inside = 0;
  /// cocycles minus coboundaries inside; an upper-bound proxy, not Hⁿ.
  int defect = 0;
};

TruncatedCohomology truncated_cohomology_report(std::shared_ptr<const ConformalModule> M, int n,
                                                int degree_bound, std::optional<int> s = std::nullopt);

}  // namespace bhlc
