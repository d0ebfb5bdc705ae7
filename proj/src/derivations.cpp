#include "bhlc/derivations.hpp"

#include "bhlc/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

namespace bhlc {

std::string_view kind_name(MapKind k) {
  switch (k) {
    case MapKind::Der: return "Der";
    case MapKind::GDer: return "GDer";
    case MapKind::QDer: return "QDer";
    case MapKind::C: return "C";
    case MapKind::QC: return "QC";
    case MapKind::ZDer: return "ZDer";
  }
  return "?";
}

MapKind parse_kind(std::string_view name) {
  std::string low(name);
  std::transform(low.begin(), low.end(), low.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (low == "der") return MapKind::Der;
  if (low == "gder") return MapKind::GDer;
  if (low == "qder") return MapKind::QDer;
  if (low == "c") return MapKind::C;
  if (low == "qc") return MapKind::QC;
  if (low == "zder") return MapKind::ZDer;
  throw std::invalid_argument("unknown map kind '" + std::string(name) + "'");
}

int kind_arity(MapKind k) {
  switch (k) {
    case MapKind::GDer: return 3;
    case MapKind::QDer: return 2;
    default: return 1;
  }
}

namespace {

using Visit = std::function<void(std::string_view, std::vector<int>, PolyVector)>;

// The three building blocks of every identity, with map slot m and bracket
// slot g:  L1 = [D_m(a)_{g+m} T b],  L2 = [T a_g D_m(b)],  R = D_m([a_g b]).
struct Identity {
  const ConformalAlgebra& A;
  PolyMatrix T;
  Poly g;

  PolyVector left(const ConformalLinearMap& D, const PolyVector& a, const PolyVector& b) const {
    return bracket_eval(A, clm_apply(D, a), apply_endo(T, b), g + D.spectral());
  }
  PolyVector right(const ConformalLinearMap& D, const PolyVector& a, const PolyVector& b) const {
    return bracket_eval(A, apply_endo(T, a), clm_apply(D, b), g);
  }
  PolyVector outer(const ConformalLinearMap& D, const PolyVector& a, const PolyVector& b) const {
    return clm_apply(D, bracket_eval(A, a, b, g));
  }
};

int highest_slot(const std::vector<ConformalLinearMap>& maps) {
  int s = -1;
  for (const auto& D : maps) s = std::max({s, D.slot, max_slot(D.entries)});
  return s;
}

void check_shapes(const ConformalAlgebra& A, const std::vector<ConformalLinearMap>& maps) {
  for (const auto& D : maps) {
    if (D.entries.rows() != A.rank() || D.entries.cols() != A.rank())
      throw ShapeError("conformal linear map rank does not match the algebra");
    if (D.slot != maps.front().slot) throw ShapeError("maps of one witness need a common slot");
    if (uses(D.entries, Var::t())) throw ShapeError("conformal linear map entries mention t");
  }
}

void visit_commutes(const ConformalAlgebra& A, const ConformalLinearMap& D, int which, const Visit& visit) {
  const int n = A.rank();
  for (int j = 0; j < n; ++j) {
    const PolyVector e = A.basis_vector(j);
    visit("map-alpha-commute", {which, j},
          clm_apply(D, apply_endo(A.alpha(), e)) - apply_endo(A.alpha(), clm_apply(D, e)));
    visit("map-beta-commute", {which, j},
          clm_apply(D, apply_endo(A.beta(), e)) - apply_endo(A.beta(), clm_apply(D, e)));
  }
}

// Calls `visit` for every scalar identity of the kind in a fixed order, even
// when the residual is zero, so the solver can stack columns.
void visit_identities(const ConformalAlgebra& A, MapKind kind, const std::vector<ConformalLinearMap>& maps,
                      int k, int l, int bracket_slot, const Visit& visit) {
  if (static_cast<int>(maps.size()) != kind_arity(kind))
    throw ShapeError(std::string(kind_name(kind)) + " needs " + std::to_string(kind_arity(kind)) +
                     " maps");
  for (std::size_t m = 0; m < maps.size(); ++m) visit_commutes(A, maps[m], static_cast<int>(m), visit);
  const Identity id{A, endo_power_compose(A, k, l), slot(bracket_slot)};
  const int n = A.rank();
  const auto& D = maps.front();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const PolyVector a = A.basis_vector(i), b = A.basis_vector(j);
      switch (kind) {
        case MapKind::Der:
          visit("derivation", {i, j}, id.outer(D, a, b) - id.left(D, a, b) - id.right(D, a, b));
          break;
        case MapKind::GDer:
          visit("gder", {i, j}, id.left(D, a, b) + id.right(maps[1], a, b) - id.outer(maps[2], a, b));
          break;
        case MapKind::QDer:
          visit("qder", {i, j}, id.left(D, a, b) + id.right(D, a, b) - id.outer(maps[1], a, b));
          break;
        case MapKind::C: {
          const PolyVector r = id.outer(D, a, b);
          visit("centroid-left", {i, j}, id.left(D, a, b) - r);
          visit("centroid-right", {i, j}, id.right(D, a, b) - r);
          break;
        }
        case MapKind::QC:
          visit("quasicentroid", {i, j}, id.left(D, a, b) - id.right(D, a, b));
          break;
        case MapKind::ZDer:
          visit("central-left", {i, j}, id.left(D, a, b));
          visit("central-right", {i, j}, id.outer(D, a, b));
          break;
      }
    }
}

CheckReport report_identities(const ConformalAlgebra& A, MapKind kind,
                              const std::vector<ConformalLinearMap>& maps, int k, int l) {
  check_shapes(A, maps);
  CheckReport rep;
  visit_identities(A, kind, maps, k, l, highest_slot(maps) + 1,
                   [&](std::string_view tag, std::vector<int> w, PolyVector r) {
                     rep.expect_zero(tag, std::move(w), std::move(r));
                   });
  return rep;
}

std::vector<Poly> flatten_identities(const ConformalAlgebra& A, MapKind kind,
                                     const std::vector<ConformalLinearMap>& maps, int k, int l,
                                     int bracket_slot) {
  std::vector<Poly> out;
  visit_identities(A, kind, maps, k, l, bracket_slot,
                   [&](std::string_view, std::vector<int>, PolyVector r) {
                     out.insert(out.end(), r.begin(), r.end());
                   });
  return out;
}

// Unknown entry coefficients: map index, matrix cell, monomial.
struct Unknowns {
  int maps;
  int n;
  int slot;
  std::vector<Monomial> monos;

  int count() const { return maps * n * n * static_cast<int>(monos.size()); }
  int per_map() const { return n * n * static_cast<int>(monos.size()); }

  std::pair<int, ConformalLinearMap> unit(int c) const {
    const int m = c / per_map();
    const int rest = c % per_map();
    const int cell = rest / static_cast<int>(monos.size());
    ConformalLinearMap D{zero_matrix(n, n), slot};
    D.entries(cell / n, cell % n) = Poly::term(monos[rest % monos.size()], Rational(1));
    return {m, D};
  }

  std::vector<ConformalLinearMap> assemble(const RationalMatrix& ker, Eigen::Index col,
                                           Eigen::Index offset = 0) const {
    std::vector<ConformalLinearMap> out(maps, ConformalLinearMap{zero_matrix(n, n), slot});
    for (int c = 0; c < count(); ++c) {
      const Rational& x = ker(c + offset, col);
      if (x.is_zero()) continue;
      auto [m, D] = unit(c);
      out[m] = out[m] + x * D;
    }
    return out;
  }
};

std::vector<Monomial> map_monomials(int slot_index, int degree_bound) {
  std::vector<Var> vars{Var::del()};
  for (int s = 0; s <= slot_index; ++s) vars.push_back(Var::slot(s));
  return monomials_up_to(vars, degree_bound);
}

// Sparse coordinates of maps over (cell, monomial).
class MapCoords {
 public:
  SparseRow<Rational> row(const ConformalLinearMap& D) {
    SparseRow<Rational> r;
    for (Eigen::Index i = 0; i < D.entries.rows(); ++i)
      for (Eigen::Index j = 0; j < D.entries.cols(); ++j)
        for (const auto& [m, c] : D.entries(i, j).terms()) r[index(i * D.entries.cols() + j, m)] = c;
    return r;
  }
  int size() const { return static_cast<int>(index_.size()); }

 private:
  int index(Eigen::Index cell, const Monomial& m) {
    auto [it, fresh] = index_.try_emplace({cell, m}, static_cast<int>(index_.size()));
    return it->second;
  }
  std::map<std::pair<Eigen::Index, Monomial>, int> index_;
};

constexpr int kCoordLimit = 1 << 20;

using MapFn = std::function<PolyVector(const PolyVector&, const Poly&)>;

MapFn as_fn(ConformalLinearMap D) {
  return [D = std::move(D)](const PolyVector& a, const Poly& s) { return clm_apply(D, a, s); };
}

// [X_lam Y]_s(a) = X_lam(Y_{s−lam} a) − Y_{s−lam}(X_lam a).
MapFn commutator_fn(MapFn X, MapFn Y, Poly lam) {
  return [X = std::move(X), Y = std::move(Y), lam = std::move(lam)](const PolyVector& a, const Poly& s) {
    const Poly shifted = s - lam;
    return PolyVector(X(Y(a, shifted), lam) - Y(X(a, lam), shifted));
  };
}

}  // namespace

CheckReport check_map_commutes(const ConformalAlgebra& A, const ConformalLinearMap& D) {
  check_shapes(A, {D});
  CheckReport rep;
  visit_commutes(A, D, 0, [&](std::string_view tag, std::vector<int> w, PolyVector r) {
    rep.expect_zero(tag, {w[1]}, std::move(r));
  });
  return rep;
}

CheckReport is_derivation(const ConformalAlgebra& A, const ConformalLinearMap& D, int k, int l) {
  return report_identities(A, MapKind::Der, {D}, k, l);
}

CheckReport check_witness(const ConformalAlgebra& A, const GenDerWitness& w) {
  return report_identities(A, w.kind, w.maps, w.k, w.l);
}

ConformalLinearMap inner_derivation(const ConformalAlgebra& A, const PolyVector& a, int k, int l) {
  const int n = A.rank();
  if (a.size() != n) throw ShapeError("inner_derivation: element rank mismatch");
  CheckReport fixed;
  fixed.expect_zero("fixed-by-alpha", {}, apply_endo(A.alpha(), a) - a);
  fixed.expect_zero("fixed-by-beta", {}, apply_endo(A.beta(), a) - a);
  if (!fixed.passed())
    throw PreconditionError("inner_derivation: element is not fixed by both twists", fixed);
  if (l < 1 && !A.is_regular())
    throw NotInvertible("inner_derivation: β is not invertible, so β^{l-1} is undefined");
  const PolyMatrix T = endo_power_compose(A, k + 1, l - 1);
  ConformalLinearMap D{zero_matrix(n, n), 0};
  for (int j = 0; j < n; ++j) D.entries.col(j) = bracket_eval(A, a, T.col(j));
  return D;
}

std::vector<GenDerWitness> solve_generalized(const ConformalAlgebra& A, MapKind kind, int k, int l,
                                             int degree_bound) {
  if (degree_bound < 0) throw std::invalid_argument("degree bound must be nonnegative");
  const int n = A.rank();
  const Unknowns u{kind_arity(kind), n, 0, map_monomials(0, degree_bound)};
  PolyConstraints sys(u.count());
  for (int c = 0; c < u.count(); ++c) {
    auto [m, D] = u.unit(c);
    std::vector<ConformalLinearMap> maps(u.maps, ConformalLinearMap::zero(n));
    maps[m] = D;
    sys.set_column(c, flatten_identities(A, kind, maps, k, l, 1));
  }
  const RationalMatrix ker = sys.kernel();
  std::vector<GenDerWitness> out;
  for (Eigen::Index col = 0; col < ker.cols(); ++col) out.push_back({kind, u.assemble(ker, col), k, l});
  return out;
}

std::vector<ConformalLinearMap> solve_derivations(const ConformalAlgebra& A, int k, int l,
                                                  int degree_bound) {
  std::vector<ConformalLinearMap> out;
  for (auto& w : solve_generalized(A, MapKind::Der, k, l, degree_bound)) out.push_back(w.maps.front());
  return out;
}

std::vector<ConformalLinearMap> primary_span(const std::vector<GenDerWitness>& ws) {
  MapCoords coords;
  RowReducer<Rational> red(kCoordLimit);
  std::vector<ConformalLinearMap> out;
  for (const auto& w : ws)
    if (red.add(coords.row(w.primary()))) out.push_back(w.primary());
  return out;
}

bool in_span(const std::vector<ConformalLinearMap>& basis, const ConformalLinearMap& D) {
  MapCoords coords;
  RowReducer<Rational> red(kCoordLimit);
  for (const auto& B : basis) red.add(coords.row(B));
  return red.reduce(coords.row(D)).empty();
}

bool admits_companions(const ConformalAlgebra& A, MapKind kind, const ConformalLinearMap& D, int k,
                       int l, int companion_degree) {
  const int n = A.rank();
  if (kind_arity(kind) == 1) return report_identities(A, kind, {D}, k, l).passed();
  check_shapes(A, {D});
  const int top = std::max(D.slot, max_slot(D.entries));
  const int g = top + 1;
  const Unknowns u{kind_arity(kind) - 1, n, D.slot, map_monomials(top, companion_degree)};
  const ConformalLinearMap zero{zero_matrix(n, n), D.slot};
  PolyConstraints sys(u.count() + 1);
  for (int c = 0; c < u.count(); ++c) {
    auto [m, E] = u.unit(c);
    std::vector<ConformalLinearMap> maps(kind_arity(kind), zero);
    maps[m + 1] = E;
    sys.set_column(c, flatten_identities(A, kind, maps, k, l, g));
  }
  std::vector<ConformalLinearMap> fixed(kind_arity(kind), zero);
  fixed.front() = D;
  sys.set_column(u.count(), flatten_identities(A, kind, fixed, k, l, g));
  const RationalMatrix ker = sys.kernel();
  for (Eigen::Index col = 0; col < ker.cols(); ++col)
    if (!ker(u.count(), col).is_zero()) return true;
  return false;
}

CheckReport check_der_bihom_structure(const ConformalAlgebra& A,
                                      const std::vector<ConformalLinearMap>& sample) {
  check_shapes(A, sample.empty() ? std::vector<ConformalLinearMap>{} : sample);
  for (const auto& D : sample)
    if (D.slot != 0 || max_slot(D.entries) > 0)
      throw ShapeError("check_der_bihom_structure expects maps in (del, l0)");
  CheckReport rep;
  rep.notes.push_back("property check on a finite sample of " + std::to_string(sample.size()) +
                      " maps, not a proof");
  const int n = A.rank();
  const int s = static_cast<int>(sample.size());
  std::vector<MapFn> plain, ap, bp, abp;
  for (const auto& D : sample) {
    plain.push_back(as_fn(D));
    ap.push_back(as_fn(compose_endo(D, A.alpha())));
    bp.push_back(as_fn(compose_endo(D, A.beta())));
    abp.push_back(as_fn(compose_endo(compose_endo(D, A.alpha()), A.beta())));
  }
  const Poly lam = slot(0), mu = slot(1), theta = slot(2);
  for (int x = 0; x < s; ++x)
    for (int j = 0; j < n; ++j) {
      const PolyVector e = A.basis_vector(j);
      const PolyVector ab = apply_endo(A.alpha(), apply_endo(A.beta(), e));
      const PolyVector ba = apply_endo(A.beta(), apply_endo(A.alpha(), e));
      rep.expect_zero("der-twists-commute", {x, j}, clm_apply(sample[x], ab) - clm_apply(sample[x], ba));
    }
  for (int x = 0; x < s; ++x)
    for (int y = 0; y < s; ++y)
      for (int j = 0; j < n; ++j) {
        const PolyVector e = A.basis_vector(j);
        const MapFn lhs = commutator_fn(bp[x], ap[y], lam);
        const MapFn rhs = commutator_fn(bp[y], ap[x], mu - lam);
        rep.expect_zero("der-skew", {x, y, j}, lhs(e, mu) + rhs(e, mu));
      }
  for (int x = 0; x < s; ++x)
    for (int y = 0; y < s; ++y)
      for (int z = 0; z < s; ++z) {
        const MapFn lhs = commutator_fn(abp[x], commutator_fn(plain[y], plain[z], mu), lam);
        const MapFn r1 = commutator_fn(bp[y], commutator_fn(ap[x], plain[z], lam), mu);
        const MapFn r2 = commutator_fn(commutator_fn(bp[x], plain[y], lam), bp[z], lam + mu);
        for (int j = 0; j < n; ++j) {
          const PolyVector e = A.basis_vector(j);
          rep.expect_zero("der-jacobi", {x, y, z, j}, lhs(e, theta) - r1(e, theta) - r2(e, theta));
        }
      }
  return rep;
}

std::pair<GenDerWitness, GenDerWitness> decompose_gder(const ConformalAlgebra& A, const GenDerWitness& w) {
  if (w.kind != MapKind::GDer || w.maps.size() != 3)
    throw std::invalid_argument("decompose_gder expects a GDer witness (D, D', D'')");
  const Rational half(1, 2);
  const auto& D = w.maps[0];
  const auto& Dp = w.maps[1];
  GenDerWitness qder{MapKind::QDer, {half * (D + Dp), w.maps[2]}, w.k, w.l};
  GenDerWitness qc{MapKind::QC, {half * (D - Dp)}, w.k, w.l};
  CheckReport rep = check_witness(A, qder);
  rep.merge(check_witness(A, qc));
  if (!rep.passed())
    throw VerificationFailure("decompose_gder: a part fails its predicate (" +
                                  rep.failures.front().tag + ")",
                              rep);
  return {qder, qc};
}

CheckReport check_centroid_bracket_central(const ConformalAlgebra& A, const GenDerWitness& c,
                                           const GenDerWitness& q, int degree_bound) {
  if (c.kind != MapKind::C || q.kind != MapKind::QC)
    throw std::invalid_argument("check_centroid_bracket_central expects a C and a QC witness");
  const int n = A.rank();
  const CLMFamily F = clm_commutator(c.primary(), q.primary());
  const auto Z = center(A, degree_bound);
  CheckReport rep;
  if (Z.empty()) rep.notes.push_back("center is zero at degree <= " + std::to_string(degree_bound));

  // Coordinates of ℚ[∂]-vectors by (index, ∂-power).
  auto coords = [n](const PolyVector& v) {
    SparseRow<Rational> r;
    for (int i = 0; i < n; ++i)
      for (const auto& [m, x] : v(i).terms()) r[i * 64 + m.degree_in(Var::del())] = x;
    return r;
  };
  RowReducer<Rational> red(n * 64);
  for (const auto& z : Z) red.add(coords(z));
  for (int j = 0; j < n; ++j) {
    std::map<Monomial, PolyVector> parts;
    for (int i = 0; i < n; ++i)
      for (const auto& [m, x] : F.entries(i, j).terms()) {
        Monomial key = m;
        const int p = key.degree_in(Var::del());
        key.exp[Var::del().index()] = 0;
        auto [it, fresh] = parts.try_emplace(key, zero_vector(n));
        it->second(i) += Poly::var(Var::del(), p) * x;
      }
    for (const auto& [key, v] : parts) {
      const bool central = total_degree(v) < 64 && red.reduce(coords(v)).empty();
      rep.expect_zero("commutator-central", {j}, central ? zero_vector(n) : v);
    }
  }
  return rep;
}

CheckReport check_qc_commutators(const ConformalAlgebra& A, const std::vector<ConformalLinearMap>& qc,
                                 int k, int l) {
  CheckReport rep;
  bool closed = true;
  std::vector<std::pair<std::vector<int>, CLMFamily>> fams;
  for (std::size_t x = 0; x < qc.size(); ++x)
    for (std::size_t y = 0; y < qc.size(); ++y) {
      CLMFamily F = clm_commutator(qc[x], qc[y]);
      if (!report_identities(A, MapKind::QC, {F}, 2 * k, 2 * l).passed()) closed = false;
      fams.push_back({{static_cast<int>(x), static_cast<int>(y)}, std::move(F)});
    }
  rep.notes.push_back(closed ? "quasicentroid space closed under the commutator"
                             : "quasicentroid space not closed under the commutator");
  if (!closed) return rep;
  for (auto& [w, F] : fams)
    for (int j = 0; j < A.rank(); ++j) {
      std::vector<int> wit = w;
      wit.push_back(j);
      rep.expect_zero("qc-commutator-nonzero", std::move(wit), F.entries.col(j));
    }
  return rep;
}

}  // namespace bhlc
