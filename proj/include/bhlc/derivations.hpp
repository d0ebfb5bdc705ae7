#pragma once

// α^kβ^l-derivations, inner derivations, the commutator on Cend(R), and the
// generalized derivation zoo (GDer, QDer, centroid, quasicentroid, central
// derivations) with degree-truncated exact solvers.
//
// Slot conventions: a map with spectral slot s uses l<s> as its own variable;
// the bracket inside an identity uses the first slot above every variable
// the maps mention, so a plain map (slot 0) is checked with bracket slot l1
// and a commutator family (slot 1, parameter l0) with bracket slot l2.

#include "bhlc/core.hpp"
#include "bhlc/linear_map.hpp"

#include <stdexcept>

namespace bhlc {

enum class MapKind { Der, GDer, QDer, C, QC, ZDer };

std::string_view kind_name(MapKind k);
/// Accepts der, gder, qder, c, qc, zder (any case); throws std::invalid_argument.
MapKind parse_kind(std::string_view name);
/// Number of maps a witness of this kind carries (GDer 3, QDer 2, others 1).
int kind_arity(MapKind k);

/// A map together with the companions its defining identity needs.
struct GenDerWitness {
  MapKind kind = MapKind::Der;
  std::vector<ConformalLinearMap> maps;  // (D), (D, D'') for QDer, (D, D', D'') for GDer
  int k = 0;
  int l = 0;

  const ConformalLinearMap& primary() const { return maps.front(); }
};

/// Raised when a result that the theory guarantees fails verification.
class VerificationFailure : public std::runtime_error {
 public:
  VerificationFailure(const std::string& what, CheckReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const CheckReport& report() const { return report_; }

 private:
  CheckReport report_;
};

/// Tags: map-alpha-commute, map-beta-commute.
CheckReport check_map_commutes(const ConformalAlgebra& A, const ConformalLinearMap& D);

/// Commutation with the twists plus, on all basis pairs,
///   D_λ([a_μ b]) = [D_λ(a)_{λ+μ} T b] + [T a_μ D_λ(b)],  T = α^kβ^l.
/// Tag for the identity: derivation.
CheckReport is_derivation(const ConformalAlgebra& A, const ConformalLinearMap& D, int k, int l);

/// The predicate of `w.kind` with the witness's own companions.
/// Tags: map-*-commute for every map, then gder, qder, centroid-left,
/// centroid-right, quasicentroid, central-left, central-right, derivation.
CheckReport check_witness(const ConformalAlgebra& A, const GenDerWitness& w);

/// b ↦ [a_λ α^{k+1}β^{l−1}(b)]. Needs α(a) = a = β(a), and A regular when l = 0.
ConformalLinearMap inner_derivation(const ConformalAlgebra& A, const PolyVector& a, int k, int l);

/// Basis of the α^kβ^l-derivations with entries of total degree ≤ D in (∂, λ).
std::vector<ConformalLinearMap> solve_derivations(const ConformalAlgebra& A, int k, int l,
                                                  int degree_bound);

/// Basis of the joint solution space of the kind's identity, all maps in Ω
/// with entries of degree ≤ D.
std::vector<GenDerWitness> solve_generalized(const ConformalAlgebra& A, MapKind kind, int k, int l,
                                             int degree_bound);

/// Independent basis of the primary maps of the witnesses (the space of D
/// for GDer and QDer).
std::vector<ConformalLinearMap> primary_span(const std::vector<GenDerWitness>& ws);

/// Exact span membership over ℚ.
bool in_span(const std::vector<ConformalLinearMap>& basis, const ConformalLinearMap& D);

/// Whether D satisfies the kind's identity for some choice of companions of
/// entry degree ≤ companion_degree (solved exactly; Ω imposed on them too).
bool admits_companions(const ConformalAlgebra& A, MapKind kind, const ConformalLinearMap& D, int k,
                       int l, int companion_degree);

/// On the sample: der-twists-commute (α′β′ = β′α′), der-skew and der-jacobi
/// for the commutator bracket with α′(D) = D∘α, β′(D) = D∘β. Witnesses are
/// sample indices followed by a basis index.
CheckReport check_der_bihom_structure(const ConformalAlgebra& A,
                                      const std::vector<ConformalLinearMap>& sample);

/// ((D+D′)/2 with companion D″, (D−D′)/2) for a GDer witness (D, D′, D″).
/// Throws VerificationFailure if either part fails its predicate.
std::pair<GenDerWitness, GenDerWitness> decompose_gder(const ConformalAlgebra& A,
                                                       const GenDerWitness& w);

/// Every (λ, μ)-coefficient of [c_λ q]_μ(e_j) lies in the span of
/// center(A, degree_bound), or vanishes when that center is empty.
/// Tag: commutator-central.
CheckReport check_centroid_bracket_central(const ConformalAlgebra& A, const GenDerWitness& c,
                                           const GenDerWitness& q, int degree_bound);

/// On a quasicentroid basis solved at bidegree (k, l): if every pairwise
/// commutator family is again a quasicentroid (bidegree (2k, 2l)), all of
/// them must vanish. Tags: qc-commutator-nonzero; a note records whether
/// the space was closed.
CheckReport check_qc_commutators(const ConformalAlgebra& A, const std::vector<ConformalLinearMap>& qc,
                                 int k, int l);

}  // namespace bhlc
