#include "bhlc/poly.hpp"

#include "bhlc/detail/expr_parser.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace bhlc {

Var Var::slot(int i) {
  if (i < 0 || i >= kMaxSlots)
    throw std::out_of_range("spectral slot index " + std::to_string(i) + " out of range");
  return Var(2 + i);
}

Var Var::from_index(int index) {
  if (index < 0 || index >= kNumVars) throw std::out_of_range("variable index out of range");
  return Var(index);
}

std::string Var::name() const {
  if (index_ == 0) return "del";
  if (index_ == 1) return "t";
  return "l" + std::to_string(index_ - 2);
}

int Monomial::degree() const {
  int d = 0;
  for (auto e : exp) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kNumVars; ++i) {
    int e = exp[i] + o.exp[i];
    if (e > 255) throw std::overflow_error("monomial exponent overflow");
    r.exp[i] = static_cast<std::uint8_t>(e);
  }
  return r;
}

Poly::Poly(const Rational& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Poly Poly::var(Var v, int power) {
  Monomial m;
  m.exp[v.index()] = static_cast<std::uint8_t>(power);
  return term(m, Rational(1));
}

Poly Poly::term(const Monomial& m, const Rational& c) {
  Poly p;
  if (!c.is_zero()) p.terms_.emplace(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant() const { return coeff(Monomial{}); }

Rational Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

int Poly::degree_in(Var v) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max<int>(d, m.exp[v.index()]);
  return d;
}

int Poly::max_slot() const {
  int s = -1;
  for (const auto& [m, c] : terms_)
    for (int i = 2; i < kNumVars; ++i)
      if (m.exp[i] > 0) s = std::max(s, i - 2);
  return s;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator-(const Poly& a) {
  Poly r = a;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

Poly Poly::pow(unsigned n) const {
  Poly result(1);
  Poly base = *this;
  while (n > 0) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n > 0) base *= base;
  }
  return result;
}

namespace {

std::string monomial_str(const Monomial& m) {
  std::string out;
  for (int i = 0; i < kNumVars; ++i) {
    if (m.exp[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += Var::from_index(i).name();
    if (m.exp[i] > 1) out += "^" + std::to_string(m.exp[i]);
  }
  return out;
}

}  // namespace

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    int dx = x.first.degree(), dy = y.first.degree();
    if (dx != dy) return dx > dy;
    return x.first > y.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [m, c] : ordered) {
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono = monomial_str(m);
    if (mono.empty()) {
      out += mag.str();
    } else if (mag.is_one()) {
      out += mono;
    } else if (mag.is_integer()) {
      out += mag.str() + "*" + mono;
    } else {
      out += "(" + mag.str() + ")*" + mono;
    }
  }
  return out;
}

namespace detail {

bool builtin_variable(std::string_view name, Var& out) {
  if (name == "del") {
    out = Var::del();
    return true;
  }
  if (name == "t") {
    out = Var::t();
    return true;
  }
  if (name.size() >= 2 && name[0] == 'l') {
    int idx = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
    if (ec == std::errc() && ptr == name.data() + name.size() && idx >= 0 && idx < kMaxSlots &&
        (name.size() == 2 || name[1] != '0')) {
      out = Var::slot(idx);
      return true;
    }
  }
  return false;
}

}  // namespace detail

Poly Poly::parse(std::string_view text) {
  detail::ExprParser<Poly> parser(
      text,
      [](std::string_view name, int col) {
        Var v = Var::del();
        if (!detail::builtin_variable(name, v))
          throw SyntaxError("unknown variable '" + std::string(name) + "'", col);
        return Poly::var(v);
      },
      [](const Poly& base, unsigned e, int) { return base.pow(e); });
  return parser.parse_all();
}

Poly substitute(const Poly& p, const Substitution& images) {
  std::array<const Poly*, kNumVars> image{};
  for (const auto& [v, e] : images) image[v.index()] = &e;
  std::array<std::vector<Poly>, kNumVars> powers;
  auto power_of = [&](int var, int e) -> const Poly& {
    auto& cache = powers[var];
    if (cache.empty()) cache.emplace_back(1);
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * *image[var]);
    return cache[e];
  };
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    Monomial kept;
    Poly factor(c);
    for (int i = 0; i < kNumVars; ++i) {
      if (m.exp[i] == 0) continue;
      if (image[i] == nullptr) {
        kept.exp[i] = m.exp[i];
      } else {
        factor *= power_of(i, m.exp[i]);
        if (factor.is_zero()) break;
      }
    }
    if (factor.is_zero()) continue;
    if (kept.is_one()) {
      out += factor;
    } else {
      out += factor * Poly::term(kept, Rational(1));
    }
  }
  return out;
}

Poly substitute(const Poly& p, Var v, const Poly& image) { return substitute(p, Substitution{{v, image}}); }

Poly coefficient_of(const Poly& p, Var v, int power) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    if (m.exp[v.index()] != power) continue;
    Monomial rest = m;
    rest.exp[v.index()] = 0;
    out += Poly::term(rest, c);
  }
  return out;
}

std::vector<Monomial> monomials_up_to(std::span<const Var> vars, int max_degree) {
  std::vector<Monomial> out;
  if (max_degree < 0) return out;
  std::vector<int> e(vars.size(), 0);
  // Enumerate compositions of each total degree in lexicographic order.
  for (int d = 0; d <= max_degree; ++d) {
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i + 1 == vars.size()) {
        e[i] = left;
        Monomial m;
        for (std::size_t k = 0; k < vars.size(); ++k)
          m.exp[vars[k].index()] = static_cast<std::uint8_t>(e[k] + m.exp[vars[k].index()]);
        out.push_back(m);
        return;
      }
      for (int x = left; x >= 0; --x) {
        e[i] = x;
        rec(i + 1, left - x);
      }
    };
    if (vars.empty()) {
      if (d == 0) out.push_back(Monomial{});
      continue;
    }
    rec(0, d);
  }
  return out;
}

}  // namespace bhlc
