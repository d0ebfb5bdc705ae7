#include "bhlc/derivations.hpp"
#include "fixtures.hpp"

#include "doctest.h"

#include <random>

using namespace bhlc;
using fixtures::diag;
using fixtures::vec;

namespace {

ConformalLinearMap map_of(std::initializer_list<std::initializer_list<Poly>> rows) {
  const int n = static_cast<int>(rows.size());
  ConformalLinearMap D{zero_matrix(n, n), 0};
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (const auto& p : r) D.entries(i, j++) = p;
    ++i;
  }
  return D;
}

const Poly l0 = slot(0);

}  // namespace

TEST_CASE("applying conformal linear maps") {
  const PolyVector a = vec({del(), 0});
  CHECK(is_zero(clm_apply(ConformalLinearMap::zero(2), a)));
  CHECK(clm_apply(ConformalLinearMap::from_endo(identity_matrix(2)), a) == vec({del() + l0, 0}));
  auto D = map_of({{l0 * del(), 0}, {0, 0}});
  CHECK(clm_apply(D, vec({1, 0})) == vec({l0 * del(), 0}));
  CHECK(clm_apply(clm_partial(clm_partial(D)), a) == scaled(clm_apply(D, a), l0 * l0));
  CHECK(clm_apply(clm_partial(D), a) == scaled(clm_apply(D, a), -l0));
}

TEST_CASE("derivation predicate basics") {
  auto A = fixtures::twisted2();
  CHECK(is_derivation(A, ConformalLinearMap::zero(2), 0, 0).passed());
  CHECK(is_derivation(A, ConformalLinearMap::zero(2), 2, 1).passed());
  auto Z = ConformalAlgebra::abelian({"u", "v"});
  CHECK(is_derivation(Z, map_of({{del() * l0, 1}, {l0, del()}}), 0, 0).passed());

  // The swap does not commute with α = diag(1, 2).
  CheckReport rep = is_derivation(A, map_of({{0, 1}, {1, 0}}), 0, 0);
  CHECK(rep.has_failure("map-alpha-commute"));
}

TEST_CASE("inner derivations") {
  auto A = fixtures::twisted2();
  CHECK(inner_derivation(A, vec({0, 0}), 0, 1).is_zero());
  auto Z = ConformalAlgebra::abelian({"u"});
  CHECK(inner_derivation(Z, vec({del()}), 0, 1).is_zero());

  // x is fixed by both twists; b ↦ [x_λ α b] sends y to [x_λ 2y] = 6y.
  ConformalLinearMap D = inner_derivation(A, vec({1, 0}), 0, 1);
  CHECK(D == map_of({{0, 0}, {0, 6}}));
  CHECK(is_derivation(A, D, 1, 1).passed());
  CHECK(is_derivation(A, inner_derivation(A, vec({del(), 0}), 0, 0), 1, 0).passed());

  CHECK_THROWS_AS(inner_derivation(A, vec({0, 1}), 0, 1), PreconditionError);
}

TEST_CASE("commutator of conformal linear maps") {
  auto K = map_of({{2, 1}, {0, 3}});
  CHECK(clm_commutator(K, K).is_zero());
  // With λ in the entries only the skew relation [D_λ D]_μ = −[D_{μ−λ} D]_μ survives.
  auto D = map_of({{del() + l0, 0}, {0, del()}});
  CLMFamily DD = clm_commutator(D, D);
  CHECK_FALSE(DD.is_zero());
  CHECK(DD.entries == PolyMatrix(-substitute(DD.entries, {{Var::slot(0), slot(1) - l0}})));
  auto P = map_of({{1, 2}, {0, 0}});
  auto Q = map_of({{0, 0}, {1, 0}});
  CLMFamily F = clm_commutator(P, Q);
  CHECK(F.slot == 1);
  CHECK(F.entries == PolyMatrix(P.entries * Q.entries - Q.entries * P.entries));
}

TEST_CASE("derivation dimensions of the abelian rank-one algebra") {
  auto Z = ConformalAlgebra::abelian({"u"});
  for (int D = 0; D <= 2; ++D) {
    int monomials = 0;
    for (int a = 0; a <= D; ++a)
      for (int b = 0; a + b <= D; ++b) ++monomials;
    CHECK(static_cast<int>(solve_derivations(Z, 0, 0, D).size()) == monomials);
  }
}

TEST_CASE("solver and checker agree") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (auto A : {fixtures::twisted2(), fixtures::current2(), fixtures::virasoro()})
    for (auto [k, l] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{1, 0}}) {
      auto basis = solve_derivations(A, k, l, 1);
      ConformalLinearMap mix = ConformalLinearMap::zero(A.rank());
      for (const auto& D : basis) {
        CHECK(is_derivation(A, D, k, l).passed());
        mix = mix + Rational(coeff(rng)) * D;
      }
      CHECK(is_derivation(A, mix, k, l).passed());
      CHECK(in_span(basis, mix));
      CHECK(in_span(basis, ConformalLinearMap::zero(A.rank())));
    }

  // ad L for [L_λ L] = (∂+2λ)L, found independently of the solver.
  auto V = fixtures::virasoro();
  auto ad = inner_derivation(V, vec({1}), -1, 1);
  CHECK(ad == map_of({{del() + l0 * Rational(2)}}));
  CHECK(in_span(solve_derivations(V, 0, 0, 1), ad));
}

TEST_CASE("commutators of derivations are derivations with λ formal") {
  for (auto A : {fixtures::twisted2(), fixtures::current2()}) {
    const std::vector<std::pair<int, int>> degrees{{0, 0}, {0, 1}, {1, 0}};
    for (auto [k, l] : degrees)
      for (auto [s, t] : degrees)
        for (const auto& D : solve_derivations(A, k, l, 1))
          for (const auto& E : solve_derivations(A, s, t, 1))
            CHECK(is_derivation(A, clm_commutator(D, E), k + s, l + t).passed());
  }
}

TEST_CASE("commutator structure on derivations, untwisted") {
  auto C = fixtures::current2();
  CHECK(check_der_bihom_structure(C, {ConformalLinearMap::zero(2)}).passed());
  auto Z = ConformalAlgebra::abelian({"u", "v"});
  CHECK(check_der_bihom_structure(Z, {map_of({{1, 0}, {0, 2}}), map_of({{3, 0}, {0, 0}})}).passed());
  std::vector<ConformalLinearMap> sample;
  for (auto [k, l] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{1, 0}})
    for (auto& D : solve_derivations(C, k, l, 1)) sample.push_back(D);
  CHECK(check_der_bihom_structure(C, sample).passed());
}

TEST_CASE("commutator Jacobi on twisted2 derivations") {
  // P = projection onto y, N(x) = (∂+λ)x, N(y) = ∂y; both are derivations.
  // Expanding the three Jacobi terms on y by hand with αβ = 6, β = 3, α = 2 on y:
  //   6λ(2μ−θ+λ) + 6λ(θ−μ) − 9λ(λ+μ) = −3λ(λ+μ).
  auto A = fixtures::twisted2();
  auto P = map_of({{0, 0}, {0, 1}});
  auto N = map_of({{del() + l0, 0}, {0, del()}});
  REQUIRE(is_derivation(A, P, 0, 0).passed());
  REQUIRE(is_derivation(A, N, 0, 0).passed());
  CheckReport rep = check_der_bihom_structure(A, {P, N});
  CHECK_FALSE(rep.has_failure("der-skew"));
  CHECK_FALSE(rep.has_failure("der-twists-commute"));
  const Violation* v = nullptr;
  for (const auto& f : rep.failures)
    if (f.tag == "der-jacobi" && f.witness == std::vector<int>{0, 1, 1, 1}) v = &f;
  REQUIRE(v != nullptr);
  CHECK(v->residual == vec({0, l0 * (l0 + slot(1)) * Rational(-3)}));
}

TEST_CASE("generalized derivation zoo on the abelian algebra") {
  auto Z = ConformalAlgebra::abelian({"u", "v"});
  const auto omega = solve_derivations(Z, 0, 0, 1).size();
  CHECK(omega == 4u * 3u);
  for (auto kind : {MapKind::ZDer, MapKind::C, MapKind::QC})
    CHECK(primary_span(solve_generalized(Z, kind, 0, 0, 1)).size() == omega);
}

TEST_CASE("identity as a centroid of an untwisted algebra") {
  auto id = [](int n) { return GenDerWitness{MapKind::C, {ConformalLinearMap::from_endo(identity_matrix(n))}, 0, 0}; };
  CHECK(check_witness(fixtures::current2(), id(2)).passed());
  // The identity map shifts ∂ by its slot μ: [L_{λ+μ} L] = (∂+2λ+2μ)L while
  // id_μ([L_λ L]) = (∂+μ+2λ)L, leaving μL (μ = l0, λ = l1 here).
  CheckReport rep = check_witness(fixtures::virasoro(), id(1));
  REQUIRE(rep.has_failure("centroid-left"));
  CHECK(rep.first_failure("centroid-left")->residual == vec({l0}));
}

TEST_CASE("inclusion chain at matched truncation") {
  for (auto A : {fixtures::twisted2(), fixtures::current2(), fixtures::virasoro()})
    for (auto [k, l] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{1, 0}}) {
      auto zder = primary_span(solve_generalized(A, MapKind::ZDer, k, l, 1));
      auto der = solve_derivations(A, k, l, 1);
      auto qder = primary_span(solve_generalized(A, MapKind::QDer, k, l, 1));
      auto gder = primary_span(solve_generalized(A, MapKind::GDer, k, l, 1));
      auto c = primary_span(solve_generalized(A, MapKind::C, k, l, 1));
      auto qc = primary_span(solve_generalized(A, MapKind::QC, k, l, 1));
      CHECK(gder.size() >= qder.size());
      CHECK(qder.size() >= der.size());
      for (const auto& D : zder) CHECK(in_span(der, D));
      for (const auto& D : der) CHECK(in_span(qder, D));
      for (const auto& D : qder) CHECK(in_span(gder, D));
      for (const auto& D : c) CHECK(in_span(qc, D));
      for (const auto& D : qc) CHECK(in_span(gder, D));
    }
}

TEST_CASE("decomposing generalized derivations") {
  auto A = fixtures::twisted2();
  for (auto [k, l] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{1, 0}}) {
    auto ws = solve_generalized(A, MapKind::GDer, k, l, 1);
    CHECK_FALSE(ws.empty());
    for (const auto& w : ws) {
      auto [qd, qc] = decompose_gder(A, w);
      CHECK(qd.maps[0] + qc.maps[0] == w.maps[0]);
    }
  }

  auto q = solve_generalized(A, MapKind::QDer, 0, 1, 1).back();
  auto [same, zero] = decompose_gder(A, {MapKind::GDer, {q.maps[0], q.maps[0], q.maps[1]}, 0, 1});
  CHECK(same.maps == q.maps);
  CHECK(zero.maps[0].is_zero());

  auto c = solve_generalized(A, MapKind::QC, 0, 1, 1).front().maps[0];
  const auto z = ConformalLinearMap::zero(2);
  auto [none, pure] = decompose_gder(A, {MapKind::GDer, {c, Rational(-1) * c, z}, 0, 1});
  CHECK(none.maps[0].is_zero());
  CHECK(pure.maps[0] == c);

  CHECK_THROWS_AS(decompose_gder(A, {MapKind::GDer, {c, c, z}, 0, 1}), VerificationFailure);
}

TEST_CASE("centroid–quasicentroid commutators are central") {
  auto Z = ConformalAlgebra::abelian({"u", "v"});
  auto zc = solve_generalized(Z, MapKind::C, 0, 0, 1);
  auto zq = solve_generalized(Z, MapKind::QC, 0, 0, 1);
  for (const auto& c : zc)
    for (const auto& q : zq) CHECK(check_centroid_bracket_central(Z, c, q, 3).passed());

  auto A = fixtures::twisted2();
  REQUIRE(center(A, 3).empty());
  for (auto [k, l] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{1, 0}})
    for (const auto& c : solve_generalized(A, MapKind::C, k, l, 1))
      for (const auto& q : solve_generalized(A, MapKind::QC, k, l, 1)) {
        CHECK(check_centroid_bracket_central(A, c, q, 3).passed());
        CHECK(clm_commutator(c.primary(), q.primary()).is_zero());
      }

  auto C = fixtures::current2();
  GenDerWitness id{MapKind::C, {ConformalLinearMap::from_endo(identity_matrix(2))}, 0, 0};
  for (const auto& q : solve_generalized(C, MapKind::QC, 0, 0, 1))
    CHECK(clm_commutator(id.primary(), q.primary()).is_zero());

  // On the abelian algebra a nonzero commutator is still central.
  auto P = map_of({{0, 1}, {0, 0}});
  auto Q = map_of({{0, 0}, {1, 0}});
  CHECK(check_centroid_bracket_central(Z, {MapKind::C, {P}, 0, 0}, {MapKind::QC, {Q}, 0, 0}, 0).passed());
  CHECK_FALSE(check_centroid_bracket_central(A, {MapKind::C, {P}, 0, 0}, {MapKind::QC, {Q}, 0, 0}, 0)
                  .passed());
}

TEST_CASE("quasicentroid commutators when the center vanishes") {
  auto A = fixtures::twisted2();
  for (auto [k, l] : {std::pair{0, 0}, std::pair{0, 1}}) {
    auto qc = primary_span(solve_generalized(A, MapKind::QC, k, l, 1));
    CHECK(check_qc_commutators(A, qc, k, l).passed());
  }
}

TEST_CASE("commutator closure properties") {
  for (auto A : {fixtures::twisted2(), fixtures::current2()}) {
    auto der = solve_derivations(A, 0, 1, 1);
    auto c = primary_span(solve_generalized(A, MapKind::C, 0, 1, 1));
    auto qder = primary_span(solve_generalized(A, MapKind::QDer, 0, 1, 1));
    auto qc = primary_span(solve_generalized(A, MapKind::QC, 0, 1, 1));
    auto zder = primary_span(solve_generalized(A, MapKind::ZDer, 0, 1, 1));
    for (const auto& D : der)
      for (const auto& E : c) CHECK(check_witness(A, {MapKind::C, {clm_commutator(D, E)}, 0, 2}).passed());
    for (const auto& D : qder)
      for (const auto& E : qc) CHECK(check_witness(A, {MapKind::QC, {clm_commutator(D, E)}, 0, 2}).passed());
    for (const auto& D : qc)
      for (const auto& E : qc) CHECK(admits_companions(A, MapKind::QDer, clm_commutator(D, E), 0, 2, 3));
    for (const auto& D : zder)
      for (const auto& E : der)
        CHECK(check_witness(A, {MapKind::ZDer, {clm_commutator(D, E)}, 0, 2}).passed());
  }
}

TEST_CASE("companion search") {
  auto A = fixtures::twisted2();
  auto q = solve_generalized(A, MapKind::QDer, 0, 0, 1);
  for (const auto& w : q) CHECK(admits_companions(A, MapKind::QDer, w.maps[0], 0, 0, 1));
  CHECK_FALSE(admits_companions(A, MapKind::QDer, map_of({{0, 1}, {0, 0}}), 0, 0, 2));
  CHECK(kind_arity(parse_kind("gder")) == 3);
  CHECK_THROWS_AS(parse_kind("nope"), std::invalid_argument);
}
