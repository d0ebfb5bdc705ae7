#pragma once

// Recursive-descent parser for the polynomial text grammar, generic over the
// value type so the same grammar serves scalar polynomials and the linear
// vector expressions used in definition files (`3*y + (del+l0)*x`).

#include "bhlc/poly.hpp"

#include <cctype>
#include <functional>
#include <string>
#include <string_view>

namespace bhlc::detail {

template <typename Value>
class ExprParser {
 public:
  using Resolver = std::function<Value(std::string_view name, int column)>;
  using PowFn = std::function<Value(const Value& base, unsigned exponent, int column)>;

  ExprParser(std::string_view text, Resolver resolve, PowFn power)
      : text_(text), resolve_(std::move(resolve)), power_(std::move(power)) {}

  Value parse_all() {
    skip_ws();
    if (pos_ >= text_.size()) fail("empty expression");
    Value v = expr();
    skip_ws();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, static_cast<int>(pos_) + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool starts_atom() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == '(' || std::isdigit(static_cast<unsigned char>(c)) ||
           std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  Value expr() {
    Value acc = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc = acc + term();
      } else if (peek('-')) {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Value term() {
    Value acc = unary();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc = acc * unary();
      } else if (starts_atom()) {
        acc = acc * unary();
      } else {
        return acc;
      }
    }
  }

  Value unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Value power() {
    Value base = atom();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      int col = static_cast<int>(pos_) + 1;
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected nonnegative integer exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 64) throw SyntaxError("exponent too large", col);
      return power_(base, static_cast<unsigned>(e), col);
    }
    return base;
  }

  Value atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::size_t den = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (den == pos_) fail("expected denominator");
      }
      std::string_view lit = text_.substr(start, pos_ - start);
      try {
        return Value(Poly(Rational::parse(lit)));
      } catch (const std::domain_error&) {
        throw SyntaxError("zero denominator", static_cast<int>(start) + 1);
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return resolve_(text_.substr(start, pos_ - start), static_cast<int>(start) + 1);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  Resolver resolve_;
  PowFn power_;
  std::size_t pos_ = 0;
};

/// Maps `del`, `t`, `l<i>` to variables; returns false for other names.
bool builtin_variable(std::string_view name, Var& out);

}  // namespace bhlc::detail
