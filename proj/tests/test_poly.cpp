#include "bhlc/linalg.hpp"
#include "bhlc/matrix.hpp"
#include "bhlc/poly.hpp"

#include "doctest.h"

using namespace bhlc;

TEST_CASE("rational normalisation and parsing") {
  CHECK(Rational(6, -4).str() == "-3/2");
  CHECK(Rational::parse("-12/8") == Rational(-3, 2));
  CHECK(Rational::parse("123456789012345678901234567890").is_integer());
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("poly arithmetic is exact and canonical") {
  Poly a = del() + slot(0);
  Poly b = del() - slot(0);
  CHECK(a * b == del().pow(2) - slot(0).pow(2));
  CHECK((a - a).is_zero());
  CHECK((a * Rational(1, 3)).coeff(Monomial{}) == Rational(0));
  CHECK(Poly().total_degree() == -1);
  CHECK((a.pow(3)).total_degree() == 3);
  CHECK(a.max_slot() == 0);
}

TEST_CASE("poly parse and print round trip") {
  for (const char* text : {"del^2 - 3*l1 + 1/2", "(del + l0)(del - l0)", "2 l0 l1 - t", "0",
                           "-(1/3)*del^3*l2"}) {
    Poly p = Poly::parse(text);
    CHECK(Poly::parse(p.str()) == p);
  }
  CHECK(Poly::parse("(del + l0)(del - l0)") == Poly::parse("del^2 - l0^2"));
  CHECK(Poly::parse("3/6") == Poly(Rational(1, 2)));
}

TEST_CASE("parse errors carry a column") {
  try {
    (void)Poly::parse("del + * l0");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.column() == 7);
  }
  CHECK_THROWS_AS(Poly::parse("foo"), SyntaxError);
  CHECK_THROWS_AS(Poly::parse("l01"), SyntaxError);
  CHECK_THROWS_AS(Poly::parse("(del"), SyntaxError);
  CHECK_THROWS_AS(Poly::parse("1/0"), SyntaxError);
}

TEST_CASE("simultaneous substitution") {
  // del -> del + l0 and l0 -> -del - l0 at once, not one after another.
  Poly p = del() * slot(0);
  Poly q = substitute(p, {{Var::del(), del() + slot(0)}, {Var::slot(0), -del() - slot(0)}});
  CHECK(q == -(del() + slot(0)).pow(2));
  CHECK(substitute(p, Var::del(), Poly(2)) == slot(0) * Rational(2));
}

TEST_CASE("coefficient extraction") {
  Poly p = Poly::parse("3 del^2 l0 + del^2 + l1");
  CHECK(coefficient_of(p, Var::del(), 2) == Poly::parse("3 l0 + 1"));
  CHECK(coefficient_of(p, Var::del(), 0) == slot(1));
  CHECK(coefficient_of(p, Var::del(), 5).is_zero());
}

TEST_CASE("monomials up to a degree") {
  const Var vars[] = {Var::del(), Var::slot(0)};
  // Binomial count C(d+2, 2).
  for (int d = 0; d <= 4; ++d) CHECK(monomials_up_to(vars, d).size() == static_cast<std::size_t>((d + 1) * (d + 2) / 2));
}

TEST_CASE("matrix inverse over Q[del]") {
  PolyMatrix m = identity_matrix(2);
  m(0, 1) = del();
  PolyMatrix inv = inverse(m);
  CHECK(inv(0, 1) == -del());
  CHECK(PolyMatrix(m * inv) == identity_matrix(2));
  PolyMatrix bad = identity_matrix(2);
  bad(0, 0) = del();
  CHECK_THROWS_AS(inverse(bad), NotInvertible);
  CHECK(matrix_power(m, -2)(0, 1) == del() * Rational(-2));
  PolyMatrix three = identity_matrix(3);
  three(0, 2) = del().pow(2);
  three(1, 0) = Poly(5);
  CHECK(PolyMatrix(three * inverse(three)) == identity_matrix(3));
}

TEST_CASE("row reducer nullspace and membership") {
  RationalMatrix m(2, 3);
  m << Rational(1), Rational(2), Rational(3), Rational(2), Rational(4), Rational(6);
  RationalMatrix ns = nullspace(m);
  CHECK(ns.cols() == 2);
  CHECK(is_zero(to_poly(RationalMatrix(m * ns))));
  CHECK(rank(m) == 1);
  RowReducer<Rational> red(3);
  red.add(RationalVector(m.row(0).transpose()));
  RationalVector v(3);
  v << Rational(-2), Rational(-4), Rational(-6);
  CHECK(red.contains(v));
  v(2) = Rational(0);
  CHECK_FALSE(red.contains(v));
}

TEST_CASE("poly constraints kernel") {
  // unknowns c0, c1 with c0*del + c1*l0 + (c0 - c1) = 0 for all del, l0 forces both zero;
  // c0*(del + l0) - c1*(del + l0) = 0 leaves c0 = c1.
  PolyConstraints a(2);
  a.set_column(0, {del() + Poly(1)});
  a.set_column(1, {slot(0) - Poly(1)});
  CHECK(a.kernel().cols() == 0);
  PolyConstraints b(2);
  b.set_column(0, {del() + slot(0)});
  b.set_column(1, {-(del() + slot(0))});
  RationalMatrix k = b.kernel();
  REQUIRE(k.cols() == 1);
  CHECK(k(0, 0) == k(1, 0));
}
