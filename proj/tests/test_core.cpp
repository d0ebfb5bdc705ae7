#include "fixtures.hpp"

#include "doctest.h"

using namespace bhlc;
using fixtures::vec;

namespace {

// (∂+λ)^q expanded with the binomial theorem, independent of substitute().
Poly binomial_shift(int q) {
  Poly out;
  Rational c(1);
  for (int k = 0; k <= q; ++k) {
    out += Poly::var(Var::del(), q - k) * Poly::var(Var::slot(0), k) * c;
    c = c * Rational(q - k) / Rational(k + 1);
  }
  return out;
}

Poly sign_pow(int p) { return p % 2 == 0 ? Poly(1) : Poly(-1); }

}  // namespace

TEST_CASE("sesquilinear extension matches the binomial oracle") {
  auto A = fixtures::virasoro();
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q) {
      PolyVector a = vec({del().pow(p)});
      PolyVector b = vec({del().pow(q)});
      Poly expect = sign_pow(p) * slot(0).pow(p) * binomial_shift(q) * (del() + slot(0) * Rational(2));
      CHECK(bracket_eval(A, a, b)(0) == expect);
    }
}

TEST_CASE("reflected spectral argument mixes the outer del") {
  auto A = fixtures::virasoro();
  // [L_{-del-l} L] = (del + 2(-del-l)) L = (-del - 2l) L
  PolyVector r = bracket_eval(A, vec({1}), vec({1}), reflect_spectral(slot(0)));
  CHECK(r(0) == -del() - slot(0) * Rational(2));
}

TEST_CASE("known algebras pass every identity") {
  for (const auto& A : {fixtures::twisted2(), fixtures::current2(), fixtures::virasoro()}) {
    CheckReport rep = check_conformal_algebra(A);
    CHECK(rep.passed());
    CHECK(rep.identities_checked > 0);
    CHECK(check_module(adjoint_module(A)).passed());
  }
  CHECK(fixtures::twisted2().is_regular());
}

TEST_CASE("broken skew is reported with its witness") {
  CheckReport rep = check_conformal_algebra(fixtures::broken_skew());
  REQUIRE(rep.has_failure("skew"));
  const Violation* v = rep.first_failure("skew");
  CHECK(v->witness == std::vector<int>{0, 1});
  CHECK(v->residual == vec({0, 2}));
}

TEST_CASE("untwisted bracket with twists fails multiplicativity") {
  auto A = fixtures::current2();
  ConformalAlgebra B(A.basis(), A.bracket(), fixtures::diag({2, 1}), identity_matrix(2));
  CHECK(check_conformal_algebra(B).has_failure("alpha-multiplicative"));
}

TEST_CASE("shape errors") {
  ProductTable t(2, 2, 2);
  CHECK_THROWS_AS(ConformalAlgebra({"x"}, t, identity_matrix(1), identity_matrix(1)), ShapeError);
  PolyMatrix a = identity_matrix(2);
  a(0, 0) = slot(0);
  CHECK_THROWS_AS(ConformalAlgebra({"x", "y"}, t, a, identity_matrix(2)), ShapeError);
  t(0, 0) = vec({slot(1), 0});
  CHECK_THROWS_AS(ConformalAlgebra({"x", "y"}, t, identity_matrix(2), identity_matrix(2)), ShapeError);
}

TEST_CASE("center") {
  // current2: x is not central, y is not central; the center is zero.
  CHECK(center(fixtures::current2(), 2).empty());
  // abelian rank 2: everything up to degree 2 is central.
  CHECK(center(ConformalAlgebra::abelian({"a", "b"}), 2).size() == 6);
  // Virasoro: [L_λ f(∂)L] = f(∂+λ)(∂+2λ)L never vanishes.
  CHECK(center(fixtures::virasoro(), 3).empty());
}

TEST_CASE("bihom lie algebra from a twisted bracket") {
  // [x,y] = 3y, [y,x] = -2y with α = diag(1,2), β = diag(1,3).
  std::vector<RationalVector> s(4, RationalVector::Constant(2, Rational(0)));
  s[1](1) = Rational(3);
  s[2](1) = Rational(-2);
  RationalMatrix al = RationalMatrix::Identity(2, 2);
  al(1, 1) = Rational(2);
  RationalMatrix be = RationalMatrix::Identity(2, 2);
  be(1, 1) = Rational(3);
  CHECK(check_bihom_lie(BiHomLieAlgebra({"x", "y"}, s, al, be)).passed());
  s[2](1) = Rational(5);
  CHECK(check_bihom_lie(BiHomLieAlgebra({"x", "y"}, s, al, be)).has_failure("skew"));
}
