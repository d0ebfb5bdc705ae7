#pragma once

// Finite-rank BiHom-Lie conformal algebras and modules on a free ℚ[∂]-basis.
//
// Conventions used throughout the library:
//  * an element of R is a PolyVector of coordinates in ℚ[∂];
//  * λ-valued results are PolyVectors whose entries may also mention the
//    spectral slots l0 (λ), l1 (μ), l2 (γ), …;
//  * structure polynomials are stored in (del, l0) with l0 as the bound
//    spectral variable; evaluation at a spectral expression Λ substitutes
//    l0 ↦ Λ in the table only;
//  * arguments are extended sesquilinearly: f(∂)eᵢ on the left becomes
//    f(−Λ), g(∂)eⱼ on the right becomes g(∂+Λ). Every substitution is
//    simultaneous, so Λ may itself mention the output ∂ (e.g. Λ = −∂−λ).

#include "bhlc/matrix.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bhlc {

/// Table of λ-products on basis pairs: entry (i, j) holds the coordinates of
/// eᵢ ∘_λ uⱼ over the output basis.
class ProductTable {
 public:
  ProductTable() = default;
  ProductTable(int left, int right, int out);

  int left() const { return left_; }
  int right() const { return right_; }
  int out() const { return out_; }

  const PolyVector& operator()(int i, int j) const { return entries_[index(i, j)]; }
  PolyVector& operator()(int i, int j) { return entries_[index(i, j)]; }

  bool is_zero() const;
  /// Max total degree over all entries (-1 if identically zero).
  int total_degree() const;

  ProductTable operator+(const ProductTable& o) const;
  ProductTable operator*(const Poly& f) const;

  friend bool operator==(const ProductTable& a, const ProductTable& b);

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * right_ + j; }
  int left_ = 0;
  int right_ = 0;
  int out_ = 0;
  std::vector<PolyVector> entries_;
};

/// u ∘_Λ v extended sesquilinearly from the basis table.
PolyVector lambda_product(const ProductTable& table, const PolyVector& u, const PolyVector& v,
                          const Poly& spectral);

/// −∂ − Λ, the spectral argument of the skew-symmetry partner.
Poly reflect_spectral(const Poly& spectral);

class ConformalAlgebra {
 public:
  ConformalAlgebra() = default;
  /// Throws ShapeError when the data are not of the documented shape.
  ConformalAlgebra(std::vector<std::string> basis, ProductTable bracket, PolyMatrix alpha,
                   PolyMatrix beta);

  /// Rank-n algebra with zero bracket and identity twists.
  static ConformalAlgebra abelian(std::vector<std::string> basis);

  int rank() const { return static_cast<int>(basis_.size()); }
  const std::vector<std::string>& basis() const { return basis_; }
  const ProductTable& bracket() const { return bracket_; }
  const PolyVector& bracket(int i, int j) const { return bracket_(i, j); }
  const PolyMatrix& alpha() const { return alpha_; }
  const PolyMatrix& beta() const { return beta_; }

  /// det α and det β are nonzero constants.
  bool is_regular() const;

  PolyVector basis_vector(int i) const { return unit_vector(rank(), i); }

  friend bool operator==(const ConformalAlgebra&, const ConformalAlgebra&) = default;

 private:
  std::vector<std::string> basis_;
  ProductTable bracket_;
  PolyMatrix alpha_;
  PolyMatrix beta_;
};

class ConformalModule {
 public:
  ConformalModule() = default;
  ConformalModule(ConformalAlgebra parent, std::vector<std::string> basis, ProductTable action,
                  PolyMatrix alpha, PolyMatrix beta);

  const ConformalAlgebra& parent() const { return parent_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  const std::vector<std::string>& basis() const { return basis_; }
  const ProductTable& action() const { return action_; }
  const PolyMatrix& alpha() const { return alpha_; }
  const PolyMatrix& beta() const { return beta_; }

  friend bool operator==(const ConformalModule&, const ConformalModule&) = default;

 private:
  ConformalAlgebra parent_;
  std::vector<std::string> basis_;
  ProductTable action_;
  PolyMatrix alpha_;
  PolyMatrix beta_;
};

/// Finite-dimensional BiHom-Lie algebra over ℚ.
class BiHomLieAlgebra {
 public:
  BiHomLieAlgebra() = default;
  /// `structure[i*n + j]` holds the coordinates of [eᵢ, eⱼ].
  BiHomLieAlgebra(std::vector<std::string> basis, std::vector<RationalVector> structure,
                  RationalMatrix alpha, RationalMatrix beta);

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<std::string>& basis() const { return basis_; }
  const RationalVector& bracket(int i, int j) const { return structure_[i * dim() + j]; }
  const RationalMatrix& alpha() const { return alpha_; }
  const RationalMatrix& beta() const { return beta_; }

  RationalVector bracket(const RationalVector& a, const RationalVector& b) const;

  friend bool operator==(const BiHomLieAlgebra&, const BiHomLieAlgebra&) = default;

 private:
  std::vector<std::string> basis_;
  std::vector<RationalVector> structure_;
  RationalMatrix alpha_;
  RationalMatrix beta_;
};

struct Violation {
  std::string tag;
  std::vector<int> witness;  // 0-based basis indices
  PolyVector residual;
};

/// Outcome of an identity check: violations are data, never exceptions.
struct CheckReport {
  std::vector<Violation> failures;
  std::vector<std::string> notes;
  std::size_t identities_checked = 0;

  bool passed() const { return failures.empty(); }
  bool has_failure(std::string_view tag) const;
  const Violation* first_failure(std::string_view tag) const;

  /// Records `residual` as a violation when it is nonzero.
  void expect_zero(std::string_view tag, std::vector<int> witness, PolyVector residual);
  void merge(CheckReport other);
};

/// Thrown by constructors whose mathematical hypotheses fail; carries the
/// report naming the violated hypothesis.
class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(const std::string& what, CheckReport report = {})
      : std::invalid_argument(what), report_(std::move(report)) {}
  const CheckReport& report() const { return report_; }

 private:
  CheckReport report_;
};

using BracketFn = std::function<PolyVector(const PolyVector&, const PolyVector&, const Poly&)>;

// --- evaluation ------------------------------------------------------------

/// [a_Λ b] with a, b arbitrary λ-vectors (defaults to Λ = λ).
PolyVector bracket_eval(const ConformalAlgebra& A, const PolyVector& a, const PolyVector& b,
                        const Poly& spectral = slot(0));

/// a ·_Λ v for the module action.
PolyVector module_action_eval(const ConformalModule& M, const PolyVector& a, const PolyVector& v,
                              const Poly& spectral = slot(0));

/// Matrix-vector product over ℚ[∂].
PolyVector apply_endo(const PolyMatrix& E, const PolyVector& a);

/// Matrix of α^k β^l; negative exponents need the algebra to be regular.
PolyMatrix endo_power_compose(const ConformalAlgebra& A, int k, int l);

// --- identity residuals shared by the checkers ------------------------------

/// B(β a, α b, λ) + B(β b, α a, −∂−λ); zero iff BiHom skew-symmetry holds.
PolyVector skew_residual(const BracketFn& B, const PolyMatrix& alpha, const PolyMatrix& beta,
                         const PolyVector& a, const PolyVector& b);

/// outer(αβ a, inner(b, c)_μ)_λ − outer(inner(β a, b)_λ, β c)_{λ+μ}
///   − outer(β b, inner(α a, c)_λ)_μ, the BiHom-Jacobi defect.
PolyVector jacobi_residual(const BracketFn& outer, const BracketFn& inner, const PolyMatrix& alpha,
                           const PolyMatrix& beta, const PolyVector& a, const PolyVector& b,
                           const PolyVector& c);

// --- checkers ----------------------------------------------------------------

/// Tags: alpha-beta-commute, alpha-multiplicative, beta-multiplicative,
/// skew, jacobi.
CheckReport check_conformal_algebra(const ConformalAlgebra& A);

/// Tags: module-twists-commute, module-alpha-equivariant,
/// module-beta-equivariant, module-jacobi.
CheckReport check_module(const ConformalModule& M);

ConformalModule adjoint_module(const ConformalAlgebra& A);

/// Basis of the elements a = Σ fᵢ(∂)eᵢ with deg fᵢ ≤ degree_bound such
/// that [a_λ eⱼ] = 0 = [eⱼ_λ a] for all j.
std::vector<PolyVector> center(const ConformalAlgebra& A, int degree_bound);

/// Tags as for check_conformal_algebra.
CheckReport check_bihom_lie(const BiHomLieAlgebra& L);

}  // namespace bhlc
