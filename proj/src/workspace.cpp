#include "bhlc/workspace.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <deque>
#include <regex>
#include <set>
#include <sstream>

namespace bhlc {

std::string_view error_code(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::Syntax: return "syntax";
    case ParseErrorKind::DuplicateName: return "duplicate-name";
    case ParseErrorKind::UnresolvedReference: return "unresolved-reference";
    case ParseErrorKind::RankMismatch: return "rank-mismatch";
  }
  return "?";
}

ParseError::ParseError(ParseErrorKind kind, std::string source, int line, int column, const std::string& msg)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      kind_(kind),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

namespace {

template <typename T>
const T& lookup(const std::map<std::string, T>& m, const std::string& name, const char* what) {
  auto it = m.find(name);
  if (it == m.end()) throw std::out_of_range(std::string("no ") + what + " named '" + name + "'");
  return it->second;
}

}  // namespace

const ConformalAlgebra& Workspace::algebra(const std::string& n) const { return lookup(algebras, n, "algebra"); }
const BiHomLieAlgebra& Workspace::bihom(const std::string& n) const { return lookup(bihoms, n, "bihom algebra"); }
const ModuleDef& Workspace::module(const std::string& n) const { return lookup(modules, n, "module"); }
const MapDef& Workspace::map(const std::string& n) const { return lookup(maps, n, "map"); }
const CochainDef& Workspace::cochain(const std::string& n) const { return lookup(cochains, n, "cochain"); }
const DeformationDef& Workspace::deformation(const std::string& n) const {
  return lookup(deformations, n, "deformation");
}

bool operator==(const Workspace& a, const Workspace& b) {
  auto same_modules = [](const auto& x, const auto& y) {
    return x.size() == y.size() && std::equal(x.begin(), x.end(), y.begin(), [](const auto& p, const auto& q) {
             return p.first == q.first && p.second.over == q.second.over && *p.second.module == *q.second.module;
           });
  };
  auto same_maps = [](const auto& x, const auto& y) {
    return x.size() == y.size() && std::equal(x.begin(), x.end(), y.begin(), [](const auto& p, const auto& q) {
             return p.first == q.first && p.second.over == q.second.over && p.second.map == q.second.map;
           });
  };
  auto same_cochains = [](const auto& x, const auto& y) {
    return x.size() == y.size() && std::equal(x.begin(), x.end(), y.begin(), [](const auto& p, const auto& q) {
             return p.first == q.first && p.second.over == q.second.over && p.second.cochain == q.second.cochain;
           });
  };
  auto same_deformations = [](const auto& x, const auto& y) {
    return x.size() == y.size() && std::equal(x.begin(), x.end(), y.begin(), [](const auto& p, const auto& q) {
             return p.first == q.first && p.second.over == q.second.over &&
                    p.second.deformation.base == q.second.deformation.base &&
                    p.second.deformation.psi == q.second.deformation.psi;
           });
  };
  return a.algebras == b.algebras && a.bihoms == b.bihoms && same_modules(a.modules, b.modules) &&
         same_maps(a.maps, b.maps) && same_cochains(a.cochains, b.cochains) &&
         same_deformations(a.deformations, b.deformations);
}

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

struct Line {
  int number = 0;
  std::string text;  // comment stripped
};

enum class BlockKind { Algebra, Bihom, Module, Clm, Cochain, Deformation };

struct Block {
  BlockKind kind;
  std::string source;
  Line header;
  std::vector<Token> tokens;
  std::vector<Line> body;
};

std::vector<Token> tokenize(const std::string& s, int offset = 0) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    out.push_back({s.substr(start, i - start), static_cast<int>(start) + 1 + offset});
  }
  return out;
}

const std::regex& identifier() {
  static const std::regex re("[A-Za-z_][A-Za-z0-9_']*");
  return re;
}

bool reserved(const std::string& name) {
  static const std::regex var("del|t|l[0-9]+");
  return std::regex_match(name, var);
}

// Context for errors raised while reading one line.
struct Where {
  const std::string& source;
  int line;

  [[noreturn]] void fail(ParseErrorKind kind, int column, const std::string& msg) const {
    throw ParseError(kind, source, line, column, msg);
  }
};

Poly parse_poly_at(const std::string& text, int column, const Where& at) {
  try {
    return Poly::parse(text);
  } catch (const SyntaxError& e) {
    at.fail(ParseErrorKind::Syntax, column + e.column() - 1, e.what());
  }
}

std::string trim(const std::string& s, int* lead = nullptr) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  if (lead) *lead = static_cast<int>(b);
  return s.substr(b, e - b);
}

int basis_index(const std::vector<std::string>& basis, const std::string& name) {
  auto it = std::find(basis.begin(), basis.end(), name);
  return it == basis.end() ? -1 : static_cast<int>(it - basis.begin());
}

// Basis name or 1-based position.
int resolve_index(const std::vector<std::string>& basis, const Token& tok, const Where& at) {
  const int by_name = basis_index(basis, tok.text);
  if (by_name >= 0) return by_name;
  if (!tok.text.empty() && std::all_of(tok.text.begin(), tok.text.end(), ::isdigit)) {
    const int k = std::stoi(tok.text);
    if (k >= 1 && k <= static_cast<int>(basis.size())) return k - 1;
    at.fail(ParseErrorKind::RankMismatch, tok.column,
            "index " + tok.text + " out of range 1.." + std::to_string(basis.size()));
  }
  at.fail(ParseErrorKind::UnresolvedReference, tok.column, "unknown basis element '" + tok.text + "'");
}

PolyVector parse_element_at(const std::string& text, int column, const std::vector<std::string>& basis,
                            const Where& at) {
  PolyVector v = zero_vector(static_cast<int>(basis.size()));
  int lead = 0;
  if (trim(text, &lead) == "0") return v;
  // Split at top-level + and - that follow an operand.
  std::vector<std::pair<std::string, int>> terms;
  std::string cur;
  int cur_col = column;
  int depth = 0;
  auto last_sig = [&]() -> char {
    for (auto it = cur.rbegin(); it != cur.rend(); ++it)
      if (!std::isspace(static_cast<unsigned char>(*it))) return *it;
    return '\0';
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '+' || c == '-')) {
      const char prev = last_sig();
      if (prev != '\0' && prev != '*' && prev != '^' && prev != '/' && prev != '(') {
        terms.push_back({cur, cur_col});
        cur.clear();
        cur_col = column + static_cast<int>(i);
        if (c == '+') {
          cur_col += 1;
          continue;
        }
      }
    }
    cur += c;
  }
  terms.push_back({cur, cur_col});
  for (const auto& [raw, col] : terms) {
    int lead_ws = 0;
    const std::string term = trim(raw, &lead_ws);
    const int tcol = col + lead_ws;
    if (term.empty()) at.fail(ParseErrorKind::Syntax, tcol, "empty term");
    const auto split = term.find_last_of(" \t*");
    std::string name = split == std::string::npos ? term : term.substr(split + 1);
    std::string coef = split == std::string::npos ? "" : trim(term.substr(0, split));
    std::string sign;
    if (split == std::string::npos && (name[0] == '-' || name[0] == '+')) {
      sign = name.substr(0, 1);
      name = name.substr(1);
    }
    while (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
    const int name_col = tcol + static_cast<int>(term.size() - name.size());
    const int k = basis_index(basis, name);
    if (k < 0) at.fail(ParseErrorKind::UnresolvedReference, name_col, "unknown basis element '" + name + "'");
    Poly c(1);
    if (coef == "-" || sign == "-") {
      c = Poly(-1);
    } else if (!coef.empty() && coef != "+") {
      c = parse_poly_at(coef, tcol, at);
    }
    v(k) += c;
  }
  return v;
}

std::vector<Poly> parse_row(const std::string& text, int column, const Where& at) {
  std::vector<Poly> out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(') ++depth;
    if (i < text.size() && text[i] == ')') --depth;
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      int lead = 0;
      const std::string piece = trim(text.substr(start, i - start), &lead);
      const int col = column + static_cast<int>(start) + lead;
      if (piece.empty()) at.fail(ParseErrorKind::Syntax, col, "empty matrix entry");
      out.push_back(parse_poly_at(piece, col, at));
      start = i + 1;
    }
  }
  return out;
}

// "<keyword> <index>: <rest>"; returns index token and the text after ':'.
std::pair<Token, std::pair<std::string, int>> split_colon(const Line& line, const Token& keyword,
                                                          const Where& at) {
  const auto colon = line.text.find(':', keyword.column - 1 + keyword.text.size());
  if (colon == std::string::npos) at.fail(ParseErrorKind::Syntax, keyword.column, "expected ':'");
  const std::string between = line.text.substr(keyword.column - 1 + keyword.text.size(),
                                               colon - (keyword.column - 1 + keyword.text.size()));
  auto toks = tokenize(between, keyword.column - 1 + static_cast<int>(keyword.text.size()));
  if (toks.size() != 1) at.fail(ParseErrorKind::Syntax, keyword.column, "expected one row index before ':'");
  return {toks[0], {line.text.substr(colon + 1), static_cast<int>(colon) + 2}};
}

// "<keyword> a b -> <element>".
struct PairLine {
  Token left, right;
  std::string rhs;
  int rhs_column;
};

PairLine split_arrow(const Line& line, const Token& keyword, const Where& at) {
  const auto arrow = line.text.find("->");
  if (arrow == std::string::npos) at.fail(ParseErrorKind::Syntax, keyword.column, "expected '->'");
  const int from = keyword.column - 1 + static_cast<int>(keyword.text.size());
  auto toks = tokenize(line.text.substr(from, arrow - from), from);
  if (toks.size() != 2) at.fail(ParseErrorKind::Syntax, keyword.column, "expected two basis elements before '->'");
  return {toks[0], toks[1], line.text.substr(arrow + 2), static_cast<int>(arrow) + 3};
}

void check_basis(const std::vector<Token>& names, const Where& at) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!std::regex_match(names[i].text, identifier()) || reserved(names[i].text))
      at.fail(ParseErrorKind::Syntax, names[i].column, "invalid basis name '" + names[i].text + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (names[j].text == names[i].text)
        at.fail(ParseErrorKind::DuplicateName, names[i].column, "basis name '" + names[i].text + "' repeated");
  }
}

// "<kw> NAME <count-kw> N basis ..."; returns names.
std::vector<std::string> header_basis(const Block& b, std::size_t count_at, const std::string& count_kw,
                                      const Where& at) {
  const auto& t = b.tokens;
  if (t.size() < count_at + 3 || t[count_at].text != count_kw || t[count_at + 2].text != "basis")
    at.fail(ParseErrorKind::Syntax, t[0].column,
            "expected '" + t[0].text + " <name> ... " + count_kw + " <n> basis <names>'");
  int n = -1;
  try {
    n = std::stoi(t[count_at + 1].text);
  } catch (const std::exception&) {
    at.fail(ParseErrorKind::Syntax, t[count_at + 1].column, "expected an integer");
  }
  std::vector<Token> names(t.begin() + static_cast<long>(count_at) + 3, t.end());
  if (n < 0 || static_cast<int>(names.size()) != n)
    at.fail(ParseErrorKind::RankMismatch, t[count_at + 1].column,
            count_kw + " " + t[count_at + 1].text + " but " + std::to_string(names.size()) + " basis names");
  check_basis(names, at);
  std::vector<std::string> out;
  for (const auto& tok : names) out.push_back(tok.text);
  return out;
}

struct Twists {
  PolyMatrix alpha, beta;
  std::vector<bool> alpha_seen, beta_seen;

  explicit Twists(int n)
      : alpha(identity_matrix(n)), beta(identity_matrix(n)), alpha_seen(n, false), beta_seen(n, false) {}

  bool take(const Line& line, const Token& kw, const std::string& a_kw, const std::string& b_kw,
            const std::vector<std::string>& basis, const Where& at) {
    const bool is_a = kw.text == a_kw;
    if (!is_a && kw.text != b_kw) return false;
    auto [idx, rest] = split_colon(line, kw, at);
    const int k = resolve_index(basis, idx, at);
    auto& seen = is_a ? alpha_seen : beta_seen;
    if (seen[k]) at.fail(ParseErrorKind::Syntax, idx.column, "row given twice");
    seen[k] = true;
    const auto row = parse_row(rest.first, rest.second, at);
    if (row.size() != basis.size())
      at.fail(ParseErrorKind::RankMismatch, rest.second,
              "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(basis.size()));
    auto& m = is_a ? alpha : beta;
    for (std::size_t j = 0; j < row.size(); ++j) m(k, static_cast<Eigen::Index>(j)) = row[j];
    return true;
  }
};

struct TableReader {
  ProductTable table;
  std::vector<bool> seen;

  TableReader(int l, int r, int o) : table(l, r, o), seen(static_cast<std::size_t>(l) * r, false) {}

  void take(const Line& line, const Token& kw, const std::vector<std::string>& left,
            const std::vector<std::string>& right, const std::vector<std::string>& out, const Where& at) {
    const PairLine p = split_arrow(line, kw, at);
    const int i = resolve_index(left, p.left, at);
    const int j = resolve_index(right, p.right, at);
    auto flag = seen[static_cast<std::size_t>(i) * right.size() + j];
    if (flag) at.fail(ParseErrorKind::Syntax, p.left.column, "pair given twice");
    seen[static_cast<std::size_t>(i) * right.size() + j] = true;
    table(i, j) = parse_element_at(p.rhs, p.rhs_column, out, at);
  }
};

[[noreturn]] void unexpected(const Token& kw, const Where& at, const char* block) {
  at.fail(ParseErrorKind::Syntax, kw.column, "unexpected '" + kw.text + "' in " + block + " block");
}

template <typename F>
auto shaped(const Block& b, F&& make) {
  try {
    return make();
  } catch (const ShapeError& e) {
    throw ParseError(ParseErrorKind::RankMismatch, b.source, b.header.number, 1, e.what());
  }
}

std::string header_ref(const Block& b, std::size_t at_index, const char* kw) {
  const Where at{b.source, b.header.number};
  if (b.tokens.size() <= at_index + 1 || b.tokens[at_index].text != kw)
    at.fail(ParseErrorKind::Syntax, b.tokens[0].column, std::string("expected '") + kw + " <name>'");
  return b.tokens[at_index + 1].text;
}

class Builder {
 public:
  void add_source(const SourceText& src) {
    std::istringstream in(src.text);
    std::string raw;
    int number = 0;
    Block* current = nullptr;
    while (std::getline(in, raw)) {
      ++number;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      const auto hash = raw.find('#');
      const std::string text = hash == std::string::npos ? raw : raw.substr(0, hash);
      if (trim(text).empty()) continue;
      const Where at{src.name, number};
      if (std::isspace(static_cast<unsigned char>(text[0]))) {
        if (!current) at.fail(ParseErrorKind::Syntax, 1, "indented line outside a definition");
        current->body.push_back({number, text});
        continue;
      }
      auto toks = tokenize(text);
      static const std::map<std::string, BlockKind> kinds{
          {"algebra", BlockKind::Algebra}, {"bihom", BlockKind::Bihom},
          {"module", BlockKind::Module},   {"clm", BlockKind::Clm},
          {"cochain", BlockKind::Cochain}, {"deformation", BlockKind::Deformation}};
      auto kind = kinds.find(toks[0].text);
      if (kind == kinds.end()) at.fail(ParseErrorKind::Syntax, 1, "unknown definition '" + toks[0].text + "'");
      if (toks.size() < 2) at.fail(ParseErrorKind::Syntax, toks[0].column, "missing name");
      if (!std::regex_match(toks[1].text, identifier()))
        at.fail(ParseErrorKind::Syntax, toks[1].column, "invalid name '" + toks[1].text + "'");
      blocks_.push_back({kind->second, src.name, {number, text}, toks, {}});
      current = &blocks_.back();
    }
  }

  Workspace build() {
    // Duplicate names per kind, then resolution in dependency order.
    std::map<std::pair<BlockKind, std::string>, const Block*> names;
    for (const auto& b : blocks_) {
      auto [it, fresh] = names.try_emplace({b.kind, b.tokens[1].text}, &b);
      if (!fresh)
        throw ParseError(ParseErrorKind::DuplicateName, b.source, b.header.number, b.tokens[1].column,
                         "'" + b.tokens[1].text + "' already defined at " + it->second->source + ":" +
                             std::to_string(it->second->header.number));
    }
    Workspace W;
    for (auto kind : {BlockKind::Algebra, BlockKind::Bihom, BlockKind::Module, BlockKind::Clm,
                      BlockKind::Cochain, BlockKind::Deformation})
      for (const auto& b : blocks_)
        if (b.kind == kind) build_block(W, b);
    return W;
  }

 private:
  static const ConformalAlgebra& ref_algebra(const Workspace& W, const Block& b, const std::string& name) {
    auto it = W.algebras.find(name);
    if (it == W.algebras.end())
      throw ParseError(ParseErrorKind::UnresolvedReference, b.source, b.header.number, b.tokens[0].column,
                       "no algebra named '" + name + "'");
    return it->second;
  }

  void build_block(Workspace& W, const Block& b) {
    const std::string& name = b.tokens[1].text;
    const Where head{b.source, b.header.number};
    switch (b.kind) {
      case BlockKind::Algebra:
      case BlockKind::Bihom: {
        const bool bihom = b.kind == BlockKind::Bihom;
        const auto basis = header_basis(b, 2, bihom ? "dim" : "rank", head);
        const int n = static_cast<int>(basis.size());
        TableReader table(n, n, n);
        Twists tw(n);
        for (const auto& line : b.body) {
          const Where at{b.source, line.number};
          const auto toks = tokenize(line.text);
          if (toks[0].text == "bracket") {
            table.take(line, toks[0], basis, basis, basis, at);
          } else if (!tw.take(line, toks[0], "alpha", "beta", basis, at)) {
            unexpected(toks[0], at, bihom ? "bihom" : "algebra");
          }
        }
        if (!bihom) {
          W.algebras.emplace(name, shaped(b, [&] { return ConformalAlgebra(basis, table.table, tw.alpha, tw.beta); }));
          break;
        }
        auto constant = [&](const Poly& p) {
          if (!p.is_constant())
            throw ParseError(ParseErrorKind::Syntax, b.source, b.header.number, 1,
                             "bihom entries must be rational constants, got " + p.str());
          return p.constant();
        };
        std::vector<RationalVector> structure;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) structure.push_back(table.table(i, j).unaryExpr(constant));
        W.bihoms.emplace(name, shaped(b, [&] {
                           return BiHomLieAlgebra(basis, structure, tw.alpha.unaryExpr(constant),
                                                  tw.beta.unaryExpr(constant));
                         }));
        break;
      }
      case BlockKind::Module: {
        const std::string over = header_ref(b, 2, "over");
        const auto& A = ref_algebra(W, b, over);
        const auto basis = header_basis(b, 4, "rank", head);
        const int m = static_cast<int>(basis.size());
        TableReader table(A.rank(), m, m);
        Twists tw(m);
        for (const auto& line : b.body) {
          const Where at{b.source, line.number};
          const auto toks = tokenize(line.text);
          if (toks[0].text == "action") {
            table.take(line, toks[0], A.basis(), basis, basis, at);
          } else if (!tw.take(line, toks[0], "alphaM", "betaM", basis, at)) {
            unexpected(toks[0], at, "module");
          }
        }
        auto M = shaped(b, [&] {
          return std::make_shared<const ConformalModule>(A, basis, table.table, tw.alpha, tw.beta);
        });
        W.modules.emplace(name, ModuleDef{over, M});
        break;
      }
      case BlockKind::Clm: {
        const std::string over = header_ref(b, 2, "over");
        const auto& A = ref_algebra(W, b, over);
        if (b.tokens.size() != 4) head.fail(ParseErrorKind::Syntax, b.tokens[0].column, "expected 'clm <name> over <algebra>'");
        ConformalLinearMap D = ConformalLinearMap::zero(A.rank());
        std::vector<bool> seen(static_cast<std::size_t>(A.rank() * A.rank()), false);
        for (const auto& line : b.body) {
          const Where at{b.source, line.number};
          const auto toks = tokenize(line.text);
          if (toks[0].text != "entry") unexpected(toks[0], at, "clm");
          const auto colon = line.text.find(':');
          if (colon == std::string::npos) at.fail(ParseErrorKind::Syntax, toks[0].column, "expected ':'");
          const int from = toks[0].column - 1 + 5;
          auto idx = tokenize(line.text.substr(from, colon - from), from);
          if (idx.size() != 2) at.fail(ParseErrorKind::Syntax, toks[0].column, "expected 'entry <row> <column>:'");
          const int k = resolve_index(A.basis(), idx[0], at);
          const int j = resolve_index(A.basis(), idx[1], at);
          if (seen[static_cast<std::size_t>(k * A.rank() + j)]) at.fail(ParseErrorKind::Syntax, idx[0].column, "entry given twice");
          seen[static_cast<std::size_t>(k * A.rank() + j)] = true;
          int lead = 0;
          const std::string poly = trim(line.text.substr(colon + 1), &lead);
          const Poly p = parse_poly_at(poly, static_cast<int>(colon) + 2 + lead, at);
          if (p.max_slot() > 0 || p.uses(Var::t()))
            at.fail(ParseErrorKind::RankMismatch, static_cast<int>(colon) + 2 + lead,
                    "map entries may only use del and l0");
          D.entries(k, j) = p;
        }
        W.maps.emplace(name, MapDef{over, D});
        break;
      }
      case BlockKind::Cochain: {
        const std::string over = header_ref(b, 2, "over");
        auto mod = W.modules.find(over);
        if (mod == W.modules.end())
          head.fail(ParseErrorKind::UnresolvedReference, b.tokens[3].column, "no module named '" + over + "'");
        if (b.tokens.size() != 6 || b.tokens[4].text != "arity")
          head.fail(ParseErrorKind::Syntax, b.tokens[0].column, "expected 'cochain <name> over <module> arity <n>'");
        int n = -1;
        try {
          n = std::stoi(b.tokens[5].text);
        } catch (const std::exception&) {
          head.fail(ParseErrorKind::Syntax, b.tokens[5].column, "expected an integer");
        }
        if (n < 0 || n > kMaxSlots - 1) head.fail(ParseErrorKind::RankMismatch, b.tokens[5].column, "arity out of range");
        const auto& M = mod->second.module;
        Cochain g = Cochain::zero(M, n);
        std::set<std::vector<int>> seen;
        for (const auto& line : b.body) {
          const Where at{b.source, line.number};
          const auto toks = tokenize(line.text);
          if (toks[0].text != "value") unexpected(toks[0], at, "cochain");
          const auto open = line.text.find('(');
          const auto close = line.text.find(')');
          const auto colon = line.text.find(':', close == std::string::npos ? 0 : close);
          if (open == std::string::npos || close == std::string::npos || colon == std::string::npos || close < open)
            at.fail(ParseErrorKind::Syntax, toks[0].column, "expected 'value (<e>,...): <element>'");
          std::vector<int> tuple;
          std::string inner = line.text.substr(open + 1, close - open - 1);
          std::size_t start = 0;
          if (!trim(inner).empty()) {
            for (std::size_t i = 0; i <= inner.size(); ++i) {
              if (i < inner.size() && inner[i] != ',') continue;
              int lead = 0;
              const std::string piece = trim(inner.substr(start, i - start), &lead);
              tuple.push_back(resolve_index(M->parent().basis(),
                                            {piece, static_cast<int>(open + 2 + start) + lead}, at));
              start = i + 1;
            }
          }
          if (static_cast<int>(tuple.size()) != n)
            at.fail(ParseErrorKind::RankMismatch, static_cast<int>(open) + 1,
                    "tuple has " + std::to_string(tuple.size()) + " entries, arity is " + std::to_string(n));
          if (!seen.insert(tuple).second) at.fail(ParseErrorKind::Syntax, static_cast<int>(open) + 1, "value given twice");
          const PolyVector v = parse_element_at(line.text.substr(colon + 1), static_cast<int>(colon) + 2, M->basis(), at);
          for (const auto& p : v)
            if (p.max_slot() > n || p.uses(Var::t()) || (n > 0 && p.uses(Var::slot(0))) || (n == 0 && p.max_slot() >= 0))
              at.fail(ParseErrorKind::RankMismatch, static_cast<int>(colon) + 2,
                      "cochain values may only use del and l1..l" + std::to_string(n));
          try {
            g.set(tuple, v);
          } catch (const ShapeError& e) {
            at.fail(ParseErrorKind::RankMismatch, toks[0].column, e.what());
          }
        }
        W.cochains.emplace(name, CochainDef{over, std::move(g)});
        break;
      }
      case BlockKind::Deformation: {
        const std::string over = header_ref(b, 2, "over");
        const auto& A = ref_algebra(W, b, over);
        if (b.tokens.size() != 4)
          head.fail(ParseErrorKind::Syntax, b.tokens[0].column, "expected 'deformation <name> over <algebra>'");
        TableReader table(A.rank(), A.rank(), A.rank());
        for (const auto& line : b.body) {
          const Where at{b.source, line.number};
          const auto toks = tokenize(line.text);
          if (toks[0].text != "psi") unexpected(toks[0], at, "deformation");
          table.take(line, toks[0], A.basis(), A.basis(), A.basis(), at);
        }
        for (int i = 0; i < A.rank(); ++i)
          for (int j = 0; j < A.rank(); ++j)
            for (const auto& p : table.table(i, j))
              if (p.max_slot() > 0 || p.uses(Var::t()))
                head.fail(ParseErrorKind::RankMismatch, 1, "psi entries may only use del and l0");
        W.deformations.emplace(name, DeformationDef{over, FormalDeformation{A, table.table}});
        break;
      }
    }
  }

  std::deque<Block> blocks_;
};

std::string coefficient_text(const Poly& c) {
  if (c == Poly(1)) return "";
  if (c == Poly(-1)) return "-";
  const std::string s = c.str();
  const bool single = c.size() == 1;
  return single ? s + " " : "(" + s + ") ";
}

void render_rows(std::ostringstream& out, const char* kw, const PolyMatrix& m,
                 const std::vector<std::string>& basis) {
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    out << "  " << kw << " " << basis[k] << ":";
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? ", " : " ") << m(k, j).str();
    out << "\n";
  }
}

void render_table(std::ostringstream& out, const char* kw, const ProductTable& t,
                  const std::vector<std::string>& left, const std::vector<std::string>& right,
                  const std::vector<std::string>& target) {
  for (int i = 0; i < t.left(); ++i)
    for (int j = 0; j < t.right(); ++j)
      if (!is_zero(t(i, j)))
        out << "  " << kw << " " << left[i] << " " << right[j] << " -> " << render_element(t(i, j), target) << "\n";
}

std::string join(const std::vector<std::string>& xs) {
  std::string s;
  for (const auto& x : xs) s += " " + x;
  return s;
}

}  // namespace

PolyVector parse_element(std::string_view text, const std::vector<std::string>& basis) {
  const std::string src = "<element>";
  return parse_element_at(std::string(text), 1, basis, Where{src, 1});
}

std::string render_element(const PolyVector& v, const std::vector<std::string>& basis) {
  std::string out;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (v(k).is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += coefficient_text(v(k)) + basis[k];
  }
  return out.empty() ? "0" : out;
}

std::string render_algebra(const std::string& name, const ConformalAlgebra& A) {
  std::ostringstream out;
  out << "algebra " << name << " rank " << A.rank() << " basis" << join(A.basis()) << "\n";
  render_table(out, "bracket", A.bracket(), A.basis(), A.basis(), A.basis());
  render_rows(out, "alpha", A.alpha(), A.basis());
  render_rows(out, "beta", A.beta(), A.basis());
  return out.str();
}

std::string render(const Workspace& W) {
  std::ostringstream out;
  auto sep = [&, first = true]() mutable {
    if (!first) out << "\n";
    first = false;
  };
  for (const auto& [name, A] : W.algebras) {
    sep();
    out << render_algebra(name, A);
  }
  for (const auto& [name, L] : W.bihoms) {
    sep();
    const int n = L.dim();
    out << "bihom " << name << " dim " << n << " basis" << join(L.basis()) << "\n";
    ProductTable t(n, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t(i, j) = to_poly(L.bracket(i, j));
    render_table(out, "bracket", t, L.basis(), L.basis(), L.basis());
    render_rows(out, "alpha", to_poly(L.alpha()), L.basis());
    render_rows(out, "beta", to_poly(L.beta()), L.basis());
  }
  for (const auto& [name, def] : W.modules) {
    sep();
    const auto& M = *def.module;
    out << "module " << name << " over " << def.over << " rank " << M.rank() << " basis" << join(M.basis()) << "\n";
    render_table(out, "action", M.action(), M.parent().basis(), M.basis(), M.basis());
    render_rows(out, "alphaM", M.alpha(), M.basis());
    render_rows(out, "betaM", M.beta(), M.basis());
  }
  for (const auto& [name, def] : W.maps) {
    sep();
    const auto& basis = W.algebra(def.over).basis();
    out << "clm " << name << " over " << def.over << "\n";
    for (Eigen::Index j = 0; j < def.map.entries.cols(); ++j)
      for (Eigen::Index k = 0; k < def.map.entries.rows(); ++k)
        if (!def.map.entries(k, j).is_zero())
          out << "  entry " << basis[k] << " " << basis[j] << ": " << def.map.entries(k, j).str() << "\n";
  }
  for (const auto& [name, def] : W.cochains) {
    sep();
    const auto& g = def.cochain;
    const auto& abasis = g.algebra().basis();
    out << "cochain " << name << " over " << def.over << " arity " << g.arity << "\n";
    for (const auto& [tuple, v] : g.values) {
      out << "  value (";
      for (std::size_t i = 0; i < tuple.size(); ++i) out << (i ? "," : "") << abasis[tuple[i]];
      out << "): " << render_element(v, g.module->basis()) << "\n";
    }
  }
  for (const auto& [name, def] : W.deformations) {
    sep();
    const auto& basis = def.deformation.base.basis();
    out << "deformation " << name << " over " << def.over << "\n";
    render_table(out, "psi", def.deformation.psi, basis, basis, basis);
  }
  return out.str();
}

Workspace load_definitions(const std::vector<SourceText>& sources) {
  Builder b;
  for (const auto& s : sources) b.add_source(s);
  return b.build();
}

Workspace parse_definitions(std::string_view text, const std::string& source) {
  return load_definitions({{source, std::string(text)}});
}

}  // namespace bhlc
