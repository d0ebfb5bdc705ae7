#include "bhlc/cohomology.hpp"

#include "bhlc/linalg.hpp"

#include <functional>
#include <tuple>

namespace bhlc {

namespace {

using IdentityVisitor =
    std::function<void(std::string_view tag, const std::vector<int>& witness, PolyVector residual)>;

PolyMatrix checked_power(const PolyMatrix& m, int k, const char* what) {
  try {
    return matrix_power(m, k);
  } catch (const NotInvertible& e) {
    throw PreconditionError(std::string(what) + " is not invertible: " + e.what());
  }
}

void visit_identities(const Cochain& g, const IdentityVisitor& visit) {
  const ConformalModule& M = *g.module;
  const ConformalAlgebra& A = M.parent();
  const int n = g.arity;
  if (n == 0) {
    const PolyVector v = g.value({});
    visit("cochain-alpha", {}, apply_endo(M.alpha(), v) - v);
    visit("cochain-beta", {}, apply_endo(M.beta(), v) - v);
    return;
  }
  std::vector<Poly> slots;
  for (int k = 1; k <= n; ++k) slots.push_back(slot(k));
  for (const auto& t : basis_tuples(A.rank(), n)) {
    std::vector<PolyVector> args;
    for (int k : t) args.push_back(A.basis_vector(k));
    for (int p = 0; p + 1 < n; ++p) {
      if (t[p] > t[p + 1]) continue;
      std::vector<PolyVector> lhs = args, rhs = args;
      lhs[p] = apply_endo(A.beta(), args[p]);
      lhs[p + 1] = apply_endo(A.alpha(), args[p + 1]);
      rhs[p] = apply_endo(A.beta(), args[p + 1]);
      rhs[p + 1] = apply_endo(A.alpha(), args[p]);
      std::vector<Poly> swapped = slots;
      std::swap(swapped[p], swapped[p + 1]);
      visit("cochain-skew", t, eval_cochain(g, lhs, slots) + eval_cochain(g, rhs, swapped));
    }
    std::vector<PolyVector> a_args, b_args;
    for (const auto& a : args) {
      a_args.push_back(apply_endo(A.alpha(), a));
      b_args.push_back(apply_endo(A.beta(), a));
    }
    const PolyVector v = g.value(t);
    visit("cochain-alpha", t, eval_cochain(g, a_args, slots) - apply_endo(M.alpha(), v));
    visit("cochain-beta", t, eval_cochain(g, b_args, slots) - apply_endo(M.beta(), v));
  }
}

/// Coefficient action in the first sum: (basis element, spectral, value).
using ActionFn = std::function<PolyVector(const PolyVector&, const Poly&, const PolyVector&)>;

Cochain differential_impl(const Cochain& g, const ActionFn& act) {
  const ConformalAlgebra& A = g.algebra();
  if (!A.is_regular()) throw PreconditionError("the differential needs a regular algebra");
  const int n = g.arity;
  const int r = A.rank();
  if (n + 1 >= kMaxSlots) throw ShapeError("cochain arity exceeds the available spectral slots");
  const PolyMatrix twist = inverse(A.alpha()) * A.beta();
  Cochain out = Cochain::zero(g.module, n + 1);
  for (const auto& t : basis_tuples(r, n + 1)) {
    PolyVector sum = zero_vector(g.module->rank());
    for (int i = 0; i <= n; ++i) {
      std::vector<PolyVector> rest;
      std::vector<Poly> rest_slots;
      for (int k = 0; k <= n; ++k)
        if (k != i) {
          rest.push_back(A.basis_vector(t[k]));
          rest_slots.push_back(slot(k + 1));
        }
      const PolyVector inner = n == 0 ? g.value({}) : eval_cochain(g, rest, rest_slots);
      if (is_zero(inner)) continue;
      const PolyVector term = act(A.basis_vector(t[i]), slot(i + 1), inner);
      if (i % 2 == 0) {
        sum += term;
      } else {
        sum -= term;
      }
    }
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        const PolyVector first = bracket_eval(A, twist.col(t[i]), A.basis_vector(t[j]), slot(i + 1));
        if (is_zero(first)) continue;
        std::vector<PolyVector> args{first};
        std::vector<Poly> slots{slot(i + 1) + slot(j + 1)};
        for (int k = 0; k <= n; ++k)
          if (k != i && k != j) {
            args.push_back(A.beta().col(t[k]));
            slots.push_back(slot(k + 1));
          }
        const PolyVector term = eval_cochain(g, args, slots);
        if ((i + j) % 2 == 0) {
          sum += term;
        } else {
          sum -= term;
        }
      }
    out.set(t, sum);
  }
  return out;
}

void require_valid(const Cochain& g) {
  CheckReport rep = validate_cochain(g);
  if (!rep.passed()) throw PreconditionError("input cochain fails " + rep.failures.front().tag, rep);
}

ActionFn module_action(const Cochain& g) {
  const ConformalModule& M = *g.module;
  const ConformalAlgebra& A = M.parent();
  const int n = g.arity;
  PolyMatrix twist = n == 0 ? identity_matrix(A.rank())
                            : PolyMatrix(A.alpha() * checked_power(A.beta(), n - 1, "beta"));
  return [&M, twist](const PolyVector& a, const Poly& s, const PolyVector& v) {
    return module_action_eval(M, apply_endo(twist, a), v, s);
  };
}

ActionFn twisted_bracket_action(const Cochain& g, int s) {
  const ConformalAlgebra& A = g.algebra();
  const int n = g.arity;
  if (!(*g.module == adjoint_module(A)))
    throw PreconditionError("d_s is defined on cochains with adjoint coefficients");
  PolyMatrix twist = n == 0 ? checked_power(A.alpha(), s, "alpha")
                            : PolyMatrix(checked_power(A.alpha(), s + 1, "alpha") *
                                         checked_power(A.beta(), n - 1, "beta"));
  return [&A, twist](const PolyVector& a, const Poly& sp, const PolyVector& v) {
    return bracket_eval(A, apply_endo(twist, a), v, sp);
  };
}

/// Dense coordinates of cochain values: (tuple, output index, monomial).
class CoordIndex {
 public:
  SparseRow<Rational> row(const Cochain& g) {
    SparseRow<Rational> out;
    for (const auto& [t, v] : g.values)
      for (Eigen::Index k = 0; k < v.size(); ++k)
        for (const auto& [m, c] : v(k).terms()) out[index(t, static_cast<int>(k), m)] = c;
    return out;
  }
  int size() const { return static_cast<int>(keys_.size()); }
  int degree(int col) const { return degrees_[col]; }

 private:
  int index(const std::vector<int>& t, int k, const Monomial& m) {
    auto key = std::make_tuple(t, k, m);
    auto [it, inserted] = keys_.try_emplace(key, static_cast<int>(keys_.size()));
    if (inserted) degrees_.push_back(m.degree());
    return it->second;
  }
  std::map<std::tuple<std::vector<int>, int, Monomial>, int> keys_;
  std::vector<int> degrees_;
};

}  // namespace

Cochain Cochain::zero(std::shared_ptr<const ConformalModule> M, int arity) {
  if (!M) throw std::invalid_argument("cochain without a module");
  if (arity < 0) throw std::invalid_argument("negative cochain arity");
  Cochain g;
  g.module = std::move(M);
  g.arity = arity;
  return g;
}

PolyVector Cochain::value(const std::vector<int>& tuple) const {
  auto it = values.find(tuple);
  return it == values.end() ? zero_vector(module->rank()) : it->second;
}

void Cochain::set(const std::vector<int>& tuple, const PolyVector& v) {
  if (static_cast<int>(tuple.size()) != arity) throw ShapeError("cochain tuple has wrong length");
  if (v.size() != module->rank()) throw ShapeError("cochain value has wrong length");
  for (int i : tuple)
    if (i < 0 || i >= module->parent().rank()) throw ShapeError("cochain tuple index out of range");
  if (bhlc::is_zero(v)) {
    values.erase(tuple);
  } else {
    values[tuple] = v;
  }
}

int Cochain::total_degree() const {
  int d = -1;
  for (const auto& [t, v] : values) d = std::max(d, bhlc::total_degree(v));
  return d;
}

Cochain& Cochain::operator+=(const Cochain& o) {
  if (arity != o.arity) throw ShapeError("adding cochains of different arity");
  for (const auto& [t, v] : o.values) set(t, value(t) + v);
  return *this;
}

Cochain operator*(const Rational& c, const Cochain& g) {
  Cochain out = Cochain::zero(g.module, g.arity);
  if (c.is_zero()) return out;
  for (const auto& [t, v] : g.values) out.values[t] = scaled(v, Poly(c));
  return out;
}

std::vector<std::vector<int>> basis_tuples(int rank, int n) {
  std::vector<std::vector<int>> out;
  if (rank == 0 && n > 0) return out;
  std::vector<int> t(static_cast<std::size_t>(n), 0);
  while (true) {
    out.push_back(t);
    int k = n - 1;
    while (k >= 0 && t[k] == rank - 1) t[k--] = 0;
    if (k < 0) break;
    ++t[k];
  }
  return out;
}

PolyVector eval_cochain(const Cochain& g, const std::vector<PolyVector>& args,
                        const std::vector<Poly>& spectral) {
  const int n = g.arity;
  if (static_cast<int>(args.size()) != n || static_cast<int>(spectral.size()) != n)
    throw ShapeError("eval_cochain: expected " + std::to_string(n) + " arguments");
  const int r = g.algebra().rank();
  PolyVector out = zero_vector(g.module->rank());
  if (n == 0) return g.value({});

  std::vector<std::vector<std::pair<int, Poly>>> coeffs(n);
  for (int k = 0; k < n; ++k) {
    if (args[k].size() != r) throw ShapeError("eval_cochain: argument rank mismatch");
    const Substitution pull{{Var::del(), -spectral[k]}};
    for (int i = 0; i < r; ++i)
      if (!args[k](i).is_zero()) coeffs[k].emplace_back(i, substitute(args[k](i), pull));
    if (coeffs[k].empty()) return out;
  }
  Substitution rename;
  bool identity = true;
  for (int k = 0; k < n; ++k) {
    rename.emplace_back(Var::slot(k + 1), spectral[k]);
    identity = identity && spectral[k] == slot(k + 1);
  }

  std::vector<std::size_t> pos(n, 0);
  std::vector<int> tuple(n);
  while (true) {
    Poly coef(1);
    for (int k = 0; k < n; ++k) {
      tuple[k] = coeffs[k][pos[k]].first;
      coef *= coeffs[k][pos[k]].second;
    }
    auto it = g.values.find(tuple);
    if (it != g.values.end()) {
      const PolyVector v = identity ? it->second : substitute(it->second, rename);
      out += scaled(v, coef);
    }
    int k = n - 1;
    while (k >= 0 && ++pos[k] == coeffs[k].size()) pos[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

PolyVector eval_cochain(const Cochain& g, const std::vector<PolyVector>& args) {
  std::vector<Poly> slots;
  for (int k = 1; k <= g.arity; ++k) slots.push_back(slot(k));
  return eval_cochain(g, args, slots);
}

CheckReport validate_cochain(const Cochain& g) {
  CheckReport rep;
  visit_identities(g, [&rep](std::string_view tag, const std::vector<int>& w, PolyVector r) {
    rep.expect_zero(tag, w, std::move(r));
  });
  return rep;
}

Cochain differential(const Cochain& g) {
  require_valid(g);
  return differential_impl(g, module_action(g));
}

Cochain differential_s(const Cochain& g, int s) {
  require_valid(g);
  return differential_impl(g, twisted_bracket_action(g, s));
}

CheckReport check_d_squared(const Cochain& g, std::optional<int> s) {
  require_valid(g);
  auto d = [s](const Cochain& c) {
    return differential_impl(c, s ? twisted_bracket_action(c, *s) : module_action(c));
  };
  const Cochain dg = d(g);
  CheckReport rep;
  CheckReport valid = validate_cochain(dg);
  rep.identities_checked += valid.identities_checked;
  for (auto& f : valid.failures) {
    f.tag = "d-valid";
    rep.failures.push_back(std::move(f));
  }
  const Cochain ddg = d(dg);
  for (const auto& t : basis_tuples(g.algebra().rank(), ddg.arity))
    rep.expect_zero("d-squared", t, ddg.value(t));
  return rep;
}

std::vector<Cochain> cochain_space_basis(std::shared_ptr<const ConformalModule> M, int n,
                                         int degree_bound) {
  if (degree_bound < 0) throw std::invalid_argument("degree bound must be nonnegative");
  if (n < 0 || n >= kMaxSlots) throw std::invalid_argument("unsupported cochain arity");
  std::vector<Var> vars{Var::del()};
  for (int k = 1; k <= n; ++k) vars.push_back(Var::slot(k));
  const std::vector<Monomial> monos = monomials_up_to(vars, degree_bound);
  const auto tuples = basis_tuples(M->parent().rank(), n);
  const int m = M->rank();

  struct Unknown {
    std::size_t tuple;
    int out;
    std::size_t mono;
  };
  std::vector<Unknown> unknowns;
  for (std::size_t t = 0; t < tuples.size(); ++t)
    for (int k = 0; k < m; ++k)
      for (std::size_t q = 0; q < monos.size(); ++q) unknowns.push_back({t, k, q});

  auto unit = [&](const Unknown& u) {
    Cochain g = Cochain::zero(M, n);
    PolyVector v = zero_vector(m);
    v(u.out) = Poly::term(monos[u.mono], Rational(1));
    g.set(tuples[u.tuple], v);
    return g;
  };

  PolyConstraints sys(static_cast<int>(unknowns.size()));
  for (std::size_t c = 0; c < unknowns.size(); ++c) {
    std::vector<Poly> residuals;
    visit_identities(unit(unknowns[c]), [&](std::string_view, const std::vector<int>&, PolyVector r) {
      residuals.insert(residuals.end(), r.begin(), r.end());
    });
    sys.set_column(static_cast<int>(c), residuals);
  }
  const RationalMatrix ker = sys.kernel();
  std::vector<Cochain> out;
  for (Eigen::Index col = 0; col < ker.cols(); ++col) {
    Cochain g = Cochain::zero(M, n);
    for (std::size_t c = 0; c < unknowns.size(); ++c)
      if (!ker(static_cast<Eigen::Index>(c), col).is_zero())
        g += ker(static_cast<Eigen::Index>(c), col) * unit(unknowns[c]);
    out.push_back(std::move(g));
  }
  return out;
}

TruncatedCohomology truncated_cohomology_report(std::shared_ptr<const ConformalModule> M, int n,
                                                int degree_bound, std::optional<int> s) {
  auto d = [s](const Cochain& c) { return s ? differential_s(c, *s) : differential(c); };
  TruncatedCohomology rep;
  rep.arity = n;
  rep.degree_bound = degree_bound;

  const auto basis = cochain_space_basis(M, n, degree_bound);
  rep.dim_cochains = static_cast<int>(basis.size());
  CoordIndex up;
  std::vector<SparseRow<Rational>> images;
  for (const auto& b : basis) images.push_back(up.row(d(b)));
  {
    RowReducer<Rational> red(1 << 30);
    for (const auto& row : images) red.add(row);
    rep.dim_cocycles = rep.dim_cochains - red.rank();
  }

  if (n > 0) {
    const auto lower = cochain_space_basis(M, n - 1, degree_bound);
    CoordIndex here;
    std::vector<SparseRow<Rational>> cols;
    for (const auto& b : lower) cols.push_back(here.row(d(b)));
    // Combinations whose coordinates above the truncation cancel.
    const int N = static_cast<int>(cols.size());
    std::map<int, SparseRow<Rational>> high_rows;
    for (int c = 0; c < N; ++c)
      for (const auto& [coord, v] : cols[c])
        if (here.degree(coord) > degree_bound) high_rows[coord][c] = v;
    RowReducer<Rational> high(N);
    for (auto& [coord, row] : high_rows) high.add(row);
    const RationalMatrix K = high.nullspace();
    RowReducer<Rational> img(here.size());
    for (Eigen::Index k = 0; k < K.cols(); ++k) {
      SparseRow<Rational> sum;
      for (int c = 0; c < N; ++c) {
        if (K(c, k).is_zero()) continue;
        for (const auto& [coord, v] : cols[c]) {
          Rational& slot_value = sum[coord];
          slot_value += K(c, k) * v;
          if (slot_value.is_zero()) sum.erase(coord);
        }
      }
      img.add(sum);
    }
    rep.dim_coboundaries_inside = img.rank();
  }
  rep.defect = rep.dim_cocycles - rep.dim_coboundaries_inside;
  return rep;
}

}  // namespace bhlc
