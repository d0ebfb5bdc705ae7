#pragma once

// Building new algebras from old: Yau twist, affinization, semidirect
// product with a module, one-line extension by a conformal linear map.

#include "bhlc/core.hpp"
#include "bhlc/linear_map.hpp"

namespace bhlc {

/// [a_λ b]′ = [a(a)_λ b(b)] with twists (a, b). The input must have identity
/// twists and pass the checker; a and b must commute and be multiplicative.
/// Throws PreconditionError naming the failed hypothesis.
ConformalAlgebra yau_twist(const ConformalAlgebra& A, const PolyMatrix& a, const PolyMatrix& b);

/// R = ℚ[∂]L with [u_λ v] = [u, v] and L's twists as constant matrices.
/// Throws PreconditionError if L fails check_bihom_lie.
ConformalAlgebra affinize(const BiHomLieAlgebra& L);

/// R ⊕ M on basis (e…, v…), module names primed where they clash:
///   [e_λ v] = e ·_λ v,  [v_λ e] = −(α⁻¹β(e) ·_{−∂−λ} α_M β_M⁻¹(v)),  [v_λ v] = 0,
/// twists α ⊕ α_M and β ⊕ β_M. Needs α, β, α_M, β_M invertible.
ConformalAlgebra semidirect_product(const ConformalAlgebra& A, const ConformalModule& M);

/// R ⊕ ℚ[∂]d with [d_λ b] = D_λ(b), [a_λ d] = −D_{−∂−λ}(αβ⁻¹(a)), [d_λ d] = 0,
/// α′(d) = β′(d) = d. Needs A regular and D commuting with α, β.
ConformalAlgebra derivation_extension(const ConformalAlgebra& A, const ConformalLinearMap& D,
                                      const std::string& line_name = "d");

}  // namespace bhlc
