#include "bhlc/deformation.hpp"
#include "fixtures.hpp"

#include "doctest.h"

using namespace bhlc;
using fixtures::diag;
using fixtures::vec;

TEST_CASE("deformed bracket on basis pairs") {
  auto A = fixtures::twisted2();
  ProductTable psi(2, 2, 2);
  psi(0, 1) = vec({slot(0), 0});
  FormalDeformation F{A, psi};
  CHECK(deformed_bracket_eval(F, A.basis_vector(0), A.basis_vector(1)) == vec({tvar() * slot(0), 3}));
  FormalDeformation Z{A, ProductTable(2, 2, 2)};
  CHECK(deformed_bracket_eval(Z, A.basis_vector(1), A.basis_vector(0)) == A.bracket(1, 0));
}

TEST_CASE("deformation identities") {
  auto A = fixtures::twisted2();
  CHECK(check_deformation({A, ProductTable(2, 2, 2)}).passed());
  auto C = fixtures::current2();
  CHECK(check_deformation({C, C.bracket()}).passed());
  ProductTable bad = C.bracket();
  bad(1, 0) = -bad(1, 0);
  CheckReport rep = check_deformation({C, bad});
  CHECK(rep.has_failure("deformation-skew"));
}

TEST_CASE("Nijenhuis bracket of scalar operators") {
  auto A = fixtures::twisted2();
  CHECK(nijenhuis_bracket(A, zero_matrix(2, 2)).is_zero());
  CHECK(nijenhuis_bracket(A, identity_matrix(2)) == A.bracket());
  const Rational c(3, 2);
  CHECK(nijenhuis_bracket(A, scaled(identity_matrix(2), Poly(c))) == A.bracket() * Poly(c));
  CHECK(check_nijenhuis(A, scaled(identity_matrix(2), Poly(c))).passed());
}

TEST_CASE("t-coefficient of the Nijenhuis deformation") {
  // For f = diag(a, b) on twisted2, by hand: [f x, y] + [x, f y] - f[x, y] = 3a y
  // and [f y, x] + [y, f x] - f[y, x] = -2a y, i.e. psi = a * bracket.
  auto A = fixtures::twisted2();
  const PolyMatrix f = diag({2, 5});
  FormalDeformation F = deformation_from_nijenhuis(A, f);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      PolyVector t1 = deformed_bracket_eval(F, A.basis_vector(i), A.basis_vector(j))
                          .unaryExpr([](const Poly& p) { return coefficient_of(p, Var::t(), 1); });
      CHECK(t1 == scaled(A.bracket(i, j), Poly(2)));
    }
}

TEST_CASE("operators must commute with the twists") {
  auto A = fixtures::twisted2();
  PolyMatrix swap = zero_matrix(2, 2);
  swap(0, 1) = Poly(1);
  swap(1, 0) = Poly(1);
  CHECK_THROWS_AS(check_nijenhuis(A, swap), PreconditionError);
  CHECK_THROWS_AS(nijenhuis_bracket(A, swap), PreconditionError);
  PolyMatrix lam = identity_matrix(2);
  lam(0, 0) = slot(0);
  CHECK_THROWS_AS(check_nijenhuis(A, lam), ShapeError);
}

TEST_CASE("projection onto the ideal spanned by y") {
  auto A = fixtures::twisted2();
  // f = diag(0, 1): psi = 0, and [f a, f b] only involves [y, y] = 0.
  CHECK(check_nijenhuis(A, diag({0, 1})).passed());
  CHECK(nijenhuis_bracket(A, diag({0, 1})).is_zero());
}

TEST_CASE("skew part of the deformation holds for every commuting operator") {
  auto A = fixtures::twisted2();
  for (const auto& f : commutant_basis(A, 1)) {
    FormalDeformation F{A, nijenhuis_bracket(A, f)};
    CHECK_FALSE(check_deformation(F).has_failure("deformation-skew"));
  }
}

TEST_CASE("Nijenhuis operators give trivial deformations") {
  auto A = fixtures::twisted2();
  std::vector<PolyMatrix> ops{zero_matrix(2, 2), identity_matrix(2),
                              scaled(identity_matrix(2), Poly(Rational(3, 2)))};
  auto found = find_nijenhuis_candidates(A, 3);
  REQUIRE_FALSE(found.empty());
  CHECK_FALSE(found.front()(0, 0) == found.front()(1, 1));
  ops.insert(ops.end(), found.begin(), found.end());
  for (const auto& f : ops) {
    REQUIRE(check_nijenhuis(A, f).passed());
    FormalDeformation F = deformation_from_nijenhuis(A, f);
    CHECK(check_deformation(F).passed());
    CHECK(check_triviality(F, f).passed());
  }
  CHECK(check_triviality({A, ProductTable(2, 2, 2)}, zero_matrix(2, 2)).passed());
}

TEST_CASE("a non-Nijenhuis operator fails at t squared") {
  // f = del commutes with the identity twists but is not a Nijenhuis operator.
  auto V = fixtures::virasoro();
  PolyMatrix f = diag({del()});
  CheckReport n = check_nijenhuis(V, f);
  CHECK(n.has_failure("nijenhuis"));
  FormalDeformation F{V, nijenhuis_bracket(V, f)};
  CheckReport t = check_triviality(F, f);
  CHECK_FALSE(t.has_failure("triviality-t0"));
  CHECK_FALSE(t.has_failure("triviality-t1"));
  CHECK(t.has_failure("triviality-t2"));
  CHECK_THROWS_AS(deformation_from_nijenhuis(V, f), PreconditionError);
}

TEST_CASE("commutant of diagonal twists") {
  // alpha = diag(1,2), beta = diag(1,3): commutant is the diagonal matrices.
  CHECK(commutant_basis(fixtures::twisted2(), 0).size() == 2);
  CHECK(commutant_basis(fixtures::twisted2(), 2).size() == 6);
  CHECK(commutant_basis(fixtures::current2(), 1).size() == 8);
}
