#pragma once

// One-parameter formal deformations [a_λ b]_t = [a_λ b] + t ψ(a, b) and the
// Nijenhuis operators that generate trivial ones. The parameter t is a
// formal polynomial variable throughout.

#include "bhlc/core.hpp"

namespace bhlc {

/// ψ stored like a bracket: entry (i, j) is ψ_{λ,−∂−λ}(e_i, e_j) in (∂, l0).
using BilinearDatum = ProductTable;

struct FormalDeformation {
  ConformalAlgebra base;
  BilinearDatum psi;
};

/// [a_Λ b] + t ψ_Λ(a, b).
PolyVector deformed_bracket_eval(const FormalDeformation& F, const PolyVector& a,
                                 const PolyVector& b, const Poly& spectral = slot(0));

/// Tags: deformation-skew, deformation-jacobi-t2 (ψ against itself) and
/// deformation-jacobi-t1 (ψ mixed with the base bracket).
CheckReport check_deformation(const FormalDeformation& F);

/// Tags: operator-alpha-commute, operator-beta-commute.
CheckReport check_commutes_with_twists(const ConformalAlgebra& A, const PolyMatrix& f);

/// [a_λ b]_N = [f(a)_λ b] + [a_λ f(b)] − f([a_λ b]). f is a ℚ[∂]-linear map
/// (entries in ∂ only) commuting with α and β; throws PreconditionError otherwise.
BilinearDatum nijenhuis_bracket(const ConformalAlgebra& A, const PolyMatrix& f);

/// Tag: nijenhuis ([f(a)_λ f(b)] = f([a_λ b]_N)). Throws PreconditionError
/// if f does not commute with the twists.
CheckReport check_nijenhuis(const ConformalAlgebra& A, const PolyMatrix& f);

/// The deformation with ψ = [·_λ·]_N; throws PreconditionError if f is not
/// a Nijenhuis operator.
FormalDeformation deformation_from_nijenhuis(const ConformalAlgebra& A, const PolyMatrix& f);

/// T_t([a_λ b]_t) = [T_t(a)_λ T_t(b)] with T_t = id + t f, compared degree by
/// degree in t. Tags: triviality-t0, triviality-t1, triviality-t2.
CheckReport check_triviality(const FormalDeformation& F, const PolyMatrix& f);

/// Basis of the ℚ[∂]-linear maps of entry degree ≤ D commuting with α and β.
std::vector<PolyMatrix> commutant_basis(const ConformalAlgebra& A, int degree_bound);

/// Non-scalar Nijenhuis operators among the combinations of the degree-0
/// commutant basis with coefficients in {−1, 0, 1, 2}, in a fixed order.
std::vector<PolyMatrix> find_nijenhuis_candidates(const ConformalAlgebra& A, std::size_t limit = 1);

}  // namespace bhlc
