#include "bhlc/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace bhlc {

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational");
  value_ /= o.value_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  auto digits_ok = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view body = text;
  bool neg = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    neg = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!digits_ok(num) || (slash != std::string_view::npos && !digits_ok(den)))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  mpq_class v;
  v.get_num() = mpz_class(std::string(num));
  v.get_den() = den.empty() ? mpz_class(1) : mpz_class(std::string(den));
  if (v.get_den() == 0) throw std::domain_error("rational with zero denominator");
  v.canonicalize();
  if (neg) v = -v;
  return Rational(v);
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

}  // namespace bhlc
