#pragma once

#include "bhlc/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bhlc {

/// Number of spectral slots λ₀…λ₉ a polynomial may mention.
inline constexpr int kMaxSlots = 10;
inline constexpr int kNumVars = 2 + kMaxSlots;

/// A polynomial variable: ∂ (`del`), the deformation parameter `t`, or a
/// spectral slot `l<i>`. Variables are totally ordered del < t < l0 < l1 < ….
class Var {
 public:
  static constexpr Var del() { return Var(0); }
  static constexpr Var t() { return Var(1); }
  static Var slot(int i);
  static Var from_index(int index);

  constexpr int index() const { return index_; }
  bool is_slot() const { return index_ >= 2; }
  int slot_index() const { return index_ - 2; }
  std::string name() const;

  friend constexpr bool operator==(Var a, Var b) { return a.index_ == b.index_; }
  friend constexpr auto operator<=>(Var a, Var b) { return a.index_ <=> b.index_; }

 private:
  constexpr explicit Var(int index) : index_(index) {}
  int index_;
};

inline Var lam(int i) { return Var::slot(i); }

/// Exponent vector over all variables.
struct Monomial {
  std::array<std::uint8_t, kNumVars> exp{};

  int degree() const;
  int degree_in(Var v) const { return exp[v.index()]; }
  bool is_one() const { return degree() == 0; }
  Monomial operator*(const Monomial& o) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Thrown by the polynomial/definition parsers; carries a 1-based column.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, int column)
      : std::runtime_error(what), column_(column) {}
  int column() const { return column_; }

 private:
  int column_;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a sorted map keyed by exponent vector and zero
/// coefficients are never stored, so two equal polynomials always have
/// identical term tables regardless of how they were built.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Poly() = default;
  Poly(int c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(const Rational& c);             // NOLINT(google-explicit-constructor)

  static Poly var(Var v, int power = 1);
  static Poly term(const Monomial& m, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant coefficient (the coefficient of the empty monomial).
  Rational constant() const;
  Rational coeff(const Monomial& m) const;
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// Maximum exponent sum over the terms; -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(Var v) const;
  bool uses(Var v) const { return degree_in(v) > 0; }
  /// Largest slot index mentioned, or -1.
  int max_slot() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator-(const Poly& a);

  Poly pow(unsigned n) const;

  friend bool operator==(const Poly&, const Poly&) = default;

  /// Renders in the text grammar, e.g. `(2/3)*del^2*l1 - l0`.
  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

  /// Parses the text grammar: rationals `p/q`, variables `del`, `t`,
  /// `l0`, `l1`, …, operators `+ - * ^`, parentheses and juxtaposition.
  static Poly parse(std::string_view text);

 private:
  void add_term(const Monomial& m, const Rational& c);
  TermMap terms_;
};

using Substitution = std::vector<std::pair<Var, Poly>>;

/// Replaces every listed variable simultaneously by its image.
Poly substitute(const Poly& p, const Substitution& images);
Poly substitute(const Poly& p, Var v, const Poly& image);

/// Coefficient extraction: splits p = Σ v^k · c_k and returns c_k.
Poly coefficient_of(const Poly& p, Var v, int power);

/// Monomials over `vars` of total degree at most `max_degree`, in a fixed
/// deterministic order (graded, then lexicographic).
std::vector<Monomial> monomials_up_to(std::span<const Var> vars, int max_degree);

inline Poly del() { return Poly::var(Var::del()); }
inline Poly tvar() { return Poly::var(Var::t()); }
inline Poly slot(int i) { return Poly::var(Var::slot(i)); }

}  // namespace bhlc

namespace Eigen {
template <>
struct NumTraits<bhlc::Poly> : GenericNumTraits<bhlc::Poly> {
  typedef bhlc::Poly Real;
  typedef bhlc::Poly NonInteger;
  typedef bhlc::Poly Nested;
  typedef bhlc::Poly Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 256
  };
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
