#pragma once

// Named definitions loaded from the line-oriented text format:
//
//   algebra <name> rank <n> basis e1 ... en
//     bracket e_i e_j -> <poly> e_k + ...     (omitted pairs are zero)
//     alpha e_k: <poly>, ..., <poly>          (row k; omitted rows are identity rows)
//     beta  e_k: ...
//   bihom <name> dim <n> basis u1 ... un      (finite-dimensional, rational entries)
//     bracket / alpha / beta as above
//   module <name> over <algebra> rank <m> basis v1 ... vm
//     action e_i v_j -> <poly> v_k + ...
//     alphaM v_k: ... ; betaM v_k: ...
//   clm <name> over <algebra>
//     entry e_k e_j: <poly in del, l0>        (coefficient of e_k in D(e_j))
//   cochain <name> over <module> arity <n>
//     value (e_i1,...,e_in): <poly> v_k + ...
//   deformation <name> over <algebra>
//     psi e_i e_j -> <poly> e_k + ...
//
// Body lines are indented. Row and entry indices may be basis names or
// 1-based integers. A coefficient containing + or - must be parenthesized.
// `#` starts a comment.

#include "bhlc/cohomology.hpp"
#include "bhlc/deformation.hpp"
#include "bhlc/linear_map.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bhlc {

enum class ParseErrorKind { Syntax, DuplicateName, UnresolvedReference, RankMismatch };

std::string_view error_code(ParseErrorKind k);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::string source, int line, int column, const std::string& msg);

  ParseErrorKind kind() const { return kind_; }
  const std::string& source() const { return source_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  ParseErrorKind kind_;
  std::string source_;
  int line_;
  int column_;
};

struct ModuleDef {
  std::string over;
  std::shared_ptr<const ConformalModule> module;
};

struct MapDef {
  std::string over;
  ConformalLinearMap map;
};

struct CochainDef {
  std::string over;
  Cochain cochain;
};

struct DeformationDef {
  std::string over;
  FormalDeformation deformation;
};

struct Workspace {
  std::map<std::string, ConformalAlgebra> algebras;
  std::map<std::string, BiHomLieAlgebra> bihoms;
  std::map<std::string, ModuleDef> modules;
  std::map<std::string, MapDef> maps;
  std::map<std::string, CochainDef> cochains;
  std::map<std::string, DeformationDef> deformations;

  /// Lookups; throw std::out_of_range naming the missing object.
  const ConformalAlgebra& algebra(const std::string& name) const;
  const BiHomLieAlgebra& bihom(const std::string& name) const;
  const ModuleDef& module(const std::string& name) const;
  const MapDef& map(const std::string& name) const;
  const CochainDef& cochain(const std::string& name) const;
  const DeformationDef& deformation(const std::string& name) const;

  friend bool operator==(const Workspace& a, const Workspace& b);
};

struct SourceText {
  std::string name;
  std::string text;
};

/// Parses all sources into one workspace; references may cross files and
/// point forward. Shapes are validated, axioms are not.
Workspace load_definitions(const std::vector<SourceText>& sources);
Workspace parse_definitions(std::string_view text, const std::string& source = "<input>");

/// Canonical text: kinds in the order above, names sorted, every row and
/// nonzero entry written out. parse_definitions(render(W)) == W.
std::string render(const Workspace& W);
std::string render_algebra(const std::string& name, const ConformalAlgebra& A);

/// `<poly> name + ...` over the given basis; `0` is the zero vector.
PolyVector parse_element(std::string_view text, const std::vector<std::string>& basis);
std::string render_element(const PolyVector& v, const std::vector<std::string>& basis);

}  // namespace bhlc
