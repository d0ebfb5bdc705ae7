#include "bhlc/commands.hpp"

#include "bhlc/constructions.hpp"
#include "bhlc/derivations.hpp"

#include <functional>
#include <map>
#include <sstream>

namespace bhlc {

namespace {

using json = nlohmann::ordered_json;

struct Ctx {
  const Workspace& W;
  const CommandArgs& args;
  json body;
};

json witness_json(const std::vector<int>& w) {
  json a = json::array();
  for (int i : w) a.push_back(i);
  return a;
}

void finish(Ctx& c, const CheckReport& rep, const std::vector<std::string>& basis) {
  c.body["passed"] = rep.passed();
  c.body["identities_checked"] = rep.identities_checked;
  json fails = json::array();
  for (const auto& f : rep.failures)
    fails.push_back({{"tag", f.tag}, {"witness", witness_json(f.witness)}, {"residual", render_element(f.residual, basis)}});
  c.body["failures"] = std::move(fails);
  json notes = json::array();
  for (const auto& n : rep.notes) notes.push_back(n);
  c.body["notes"] = std::move(notes);
}

// A hypothesis failure raised by an operation becomes a failed report.
void failed(Ctx& c, const std::string& error, const CheckReport& rep, const std::vector<std::string>& basis) {
  finish(c, rep, basis);
  c.body["passed"] = false;
  c.body["error"] = error;
}

json map_json(const ConformalLinearMap& D) {
  json rows = json::array();
  for (const auto& r : clm_strings(D)) rows.push_back(r);
  return rows;
}

json cochain_json(const Cochain& g) {
  json values = json::object();
  const auto& ab = g.algebra().basis();
  for (const auto& [tuple, v] : g.values) {
    std::string key = "(";
    for (std::size_t i = 0; i < tuple.size(); ++i) key += (i ? "," : "") + ab[tuple[i]];
    values[key + ")"] = render_element(v, g.module->basis());
  }
  return values;
}

json table_json(const ProductTable& t, const std::vector<std::string>& basis) {
  json out = json::object();
  for (int i = 0; i < t.left(); ++i)
    for (int j = 0; j < t.right(); ++j)
      if (!is_zero(t(i, j))) out[basis[i] + " " + basis[j]] = render_element(t(i, j), basis);
  return out;
}

void need_names(const CommandArgs& a, std::size_t n, const char* usage) {
  if (a.names.size() != n) throw UsageError(std::string("usage: ") + usage);
}

void need_degree(int d) {
  if (d < 0) throw UsageError("--degree must be nonnegative");
}

PolyMatrix operator_matrix(const Workspace& W, const std::string& name, const std::string& over) {
  const auto& def = W.map(name);
  if (def.over != over) throw UsageError("map '" + name + "' is defined over '" + def.over + "', not '" + over + "'");
  if (!is_del_only(def.map.entries)) throw UsageError("map '" + name + "' must be a ℚ[∂]-matrix (no l0)");
  return def.map.entries;
}

const ConformalLinearMap& map_over(const Workspace& W, const std::string& name, const std::string& over) {
  const auto& def = W.map(name);
  if (def.over != over) throw UsageError("map '" + name + "' is defined over '" + def.over + "', not '" + over + "'");
  return def.map;
}

std::shared_ptr<const ConformalModule> module_or_adjoint(const Workspace& W, const std::string& name) {
  if (W.modules.count(name)) return W.module(name).module;
  if (W.algebras.count(name)) return std::make_shared<const ConformalModule>(adjoint_module(W.algebra(name)));
  throw UsageError("no module or algebra named '" + name + "'");
}

void constructed(Ctx& c, const std::string& name, const ConformalAlgebra& R) {
  c.body["result"] = {{"rank", R.rank()}, {"definition", render_algebra(name, R)}};
  finish(c, check_conformal_algebra(R), R.basis());
}

void prefix_merge(CheckReport& into, const CheckReport& rep, std::vector<int> prefix) {
  for (auto f : rep.failures) {
    f.witness.insert(f.witness.begin(), prefix.begin(), prefix.end());
    into.failures.push_back(std::move(f));
  }
  into.identities_checked += rep.identities_checked;
}

using Handler = std::function<void(Ctx&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"check",
       [](Ctx& c) {
         need_names(c.args, 1, "check <algebra>");
         const auto& A = c.W.algebra(c.args.names[0]);
         finish(c, check_conformal_algebra(A), A.basis());
       }},
      {"check-module",
       [](Ctx& c) {
         need_names(c.args, 1, "check-module <module>");
         const auto& M = *c.W.module(c.args.names[0]).module;
         finish(c, check_module(M), M.basis());
       }},
      {"check-bihom-lie",
       [](Ctx& c) {
         need_names(c.args, 1, "check-bihom-lie <bihom>");
         const auto& L = c.W.bihom(c.args.names[0]);
         finish(c, check_bihom_lie(L), L.basis());
       }},
      {"twist",
       [](Ctx& c) {
         need_names(c.args, 3, "twist <algebra> <alpha-map> <beta-map>");
         const auto& name = c.args.names[0];
         const auto& A = c.W.algebra(name);
         try {
           constructed(c, name + "_twisted",
                       yau_twist(A, operator_matrix(c.W, c.args.names[1], name), operator_matrix(c.W, c.args.names[2], name)));
         } catch (const PreconditionError& e) {
           failed(c, e.what(), e.report(), A.basis());
         }
       }},
      {"affinize",
       [](Ctx& c) {
         need_names(c.args, 1, "affinize <bihom>");
         const auto& L = c.W.bihom(c.args.names[0]);
         try {
           constructed(c, c.args.names[0] + "_affine", affinize(L));
         } catch (const PreconditionError& e) {
           failed(c, e.what(), e.report(), L.basis());
         }
       }},
      {"semidirect",
       [](Ctx& c) {
         need_names(c.args, 2, "semidirect <algebra> <module>");
         const auto& A = c.W.algebra(c.args.names[0]);
         const auto& def = c.W.module(c.args.names[1]);
         if (def.over != c.args.names[0]) throw UsageError("module '" + c.args.names[1] + "' is not over '" + c.args.names[0] + "'");
         try {
           constructed(c, c.args.names[0] + "_" + c.args.names[1], semidirect_product(A, *def.module));
         } catch (const NotInvertible& e) {
           failed(c, e.what(), {}, A.basis());
         }
       }},
      {"extend-derivation",
       [](Ctx& c) {
         need_names(c.args, 2, "extend-derivation <algebra> <map>");
         const auto& A = c.W.algebra(c.args.names[0]);
         const auto& D = map_over(c.W, c.args.names[1], c.args.names[0]);
         try {
           const ConformalAlgebra R = derivation_extension(A, D);
           constructed(c, c.args.names[0] + "_ext", R);
           c.body["result"]["is_derivation_0_1"] = is_derivation(A, D, 0, 1).passed();
         } catch (const PreconditionError& e) {
           failed(c, e.what(), e.report(), A.basis());
         }
       }},
      {"d",
       [](Ctx& c) {
         need_names(c.args, 1, "d <cochain> [--s <int>]");
         const auto& g = c.W.cochain(c.args.names[0]).cochain;
         try {
           const Cochain dg = c.args.s ? differential_s(g, *c.args.s) : differential(g);
           c.body["result"] = {{"arity", dg.arity}, {"values", cochain_json(dg)}};
           finish(c, CheckReport{}, g.module->basis());
         } catch (const PreconditionError& e) {
           failed(c, e.what(), e.report(), g.module->basis());
         } catch (const NotInvertible& e) {
           failed(c, e.what(), {}, g.module->basis());
         }
       }},
      {"d2-check",
       [](Ctx& c) {
         need_names(c.args, 1, "d2-check <module|algebra> --arity <n> --degree <D> [--s <int>]");
         need_degree(c.args.degree);
         auto M = module_or_adjoint(c.W, c.args.names[0]);
         CheckReport all;
         int invalid = 0;
         const auto basis = cochain_space_basis(M, c.args.arity, c.args.degree);
         try {
           for (std::size_t i = 0; i < basis.size(); ++i) {
             CheckReport rep = check_d_squared(basis[i], c.args.s);
             if (rep.has_failure("d-valid")) ++invalid;
             CheckReport squared;
             squared.identities_checked = rep.identities_checked;
             for (const auto& f : rep.failures)
               if (f.tag == "d-squared") squared.failures.push_back(f);
             prefix_merge(all, squared, {static_cast<int>(i)});
           }
         } catch (const NotInvertible& e) {
           failed(c, e.what(), {}, M->basis());
           return;
         }
         all.notes.push_back("checks d(dγ) = 0; validity of dγ is reported separately");
         c.body["result"] = {{"cochains", basis.size()}, {"dgamma_invalid", invalid}};
         finish(c, all, M->basis());
       }},
      {"cochain-basis",
       [](Ctx& c) {
         need_names(c.args, 1, "cochain-basis <module|algebra> --arity <n> --degree <D>");
         need_degree(c.args.degree);
         auto M = module_or_adjoint(c.W, c.args.names[0]);
         json items = json::array();
         const auto basis = cochain_space_basis(M, c.args.arity, c.args.degree);
         for (const auto& g : basis) items.push_back(cochain_json(g));
         c.body["result"] = {{"dimension", basis.size()}, {"basis", std::move(items)}};
         finish(c, CheckReport{}, M->basis());
       }},
      {"cohomology-report",
       [](Ctx& c) {
         need_names(c.args, 1, "cohomology-report <module|algebra> --arity <n> --degree <D> [--s <int>]");
         need_degree(c.args.degree);
         auto M = module_or_adjoint(c.W, c.args.names[0]);
         try {
           const auto t = truncated_cohomology_report(M, c.args.arity, c.args.degree, c.args.s);
           c.body["result"] = {{"arity", t.arity},
                               {"degree_bound", t.degree_bound},
                               {"dim_cochains", t.dim_cochains},
                               {"dim_cocycles", t.dim_cocycles},
                               {"dim_coboundaries_inside", t.dim_coboundaries_inside},
                               {"defect", t.defect}};
           CheckReport rep;
           rep.notes.push_back("truncated proxy, not the cohomology group");
           finish(c, rep, M->basis());
         } catch (const NotInvertible& e) {
           failed(c, e.what(), {}, M->basis());
         }
       }},
      {"nijenhuis-check",
       [](Ctx& c) {
         need_names(c.args, 2, "nijenhuis-check <algebra> <map>");
         const auto& A = c.W.algebra(c.args.names[0]);
         try {
           finish(c, check_nijenhuis(A, operator_matrix(c.W, c.args.names[1], c.args.names[0])), A.basis());
         } catch (const PreconditionError& e) {
           failed(c, e.what(), e.report(), A.basis());
         }
       }},
      {"deform",
       [](Ctx& c) {
         need_names(c.args, 2, "deform <algebra> <map>");
         const auto& A = c.W.algebra(c.args.names[0]);
         try {
           const auto F = deformation_from_nijenhuis(A, operator_matrix(c.W, c.args.names[1], c.args.names[0]));
           c.body["result"] = {{"psi", table_json(F.psi, A.basis())}};
           finish(c, check_deformation(F), A.basis());
         } catch (const PreconditionError& e) {
           failed(c, e.what(), e.report(), A.basis());
         }
       }},
      {"triviality-check",
       [](Ctx& c) {
         need_names(c.args, 2, "triviality-check <deformation> <map>");
         const auto& def = c.W.deformation(c.args.names[0]);
         const auto& basis = def.deformation.base.basis();
         try {
           finish(c, check_triviality(def.deformation, operator_matrix(c.W, c.args.names[1], def.over)), basis);
         } catch (const PreconditionError& e) {
           failed(c, e.what(), e.report(), basis);
         }
       }},
      {"derivations",
       [](Ctx& c) {
         need_names(c.args, 1, "derivations <algebra> --k <int> --l <int> --degree <D>");
         need_degree(c.args.degree);
         const auto& A = c.W.algebra(c.args.names[0]);
         const auto basis = solve_derivations(A, c.args.k, c.args.l, c.args.degree);
         CheckReport all;
         json items = json::array();
         for (std::size_t i = 0; i < basis.size(); ++i) {
           prefix_merge(all, is_derivation(A, basis[i], c.args.k, c.args.l), {static_cast<int>(i)});
           items.push_back(map_json(basis[i]));
         }
         c.body["result"] = {{"dimension", basis.size()}, {"basis", std::move(items)}};
         finish(c, all, A.basis());
       }},
      {"inner",
       [](Ctx& c) {
         need_names(c.args, 2, "inner <algebra> <element> --k <int> --l <int>");
         const auto& A = c.W.algebra(c.args.names[0]);
         PolyVector a;
         try {
           a = parse_element(c.args.names[1], A.basis());
         } catch (const ParseError& e) {
           throw UsageError(std::string("element: ") + e.what());
         }
         try {
           const auto D = inner_derivation(A, a, c.args.k, c.args.l);
           c.body["result"] = {{"map", map_json(D)}, {"bidegree", {c.args.k + 1, c.args.l}}};
           finish(c, is_derivation(A, D, c.args.k + 1, c.args.l), A.basis());
         } catch (const PreconditionError& e) {
           failed(c, e.what(), e.report(), A.basis());
         } catch (const NotInvertible& e) {
           failed(c, e.what(), {}, A.basis());
         }
       }},
      {"gder",
       [](Ctx& c) {
         need_names(c.args, 1, "gder <algebra> --kind gder|qder|c|qc|zder --k <int> --l <int> --degree <D>");
         need_degree(c.args.degree);
         const auto& A = c.W.algebra(c.args.names[0]);
         MapKind kind;
         try {
           kind = parse_kind(c.args.kind);
         } catch (const std::invalid_argument& e) {
           throw UsageError(e.what());
         }
         const auto ws = solve_generalized(A, kind, c.args.k, c.args.l, c.args.degree);
         CheckReport all;
         json items = json::array();
         for (std::size_t i = 0; i < ws.size(); ++i) {
           prefix_merge(all, check_witness(A, ws[i]), {static_cast<int>(i)});
           json maps = json::array();
           for (const auto& D : ws[i].maps) maps.push_back(map_json(D));
           items.push_back(std::move(maps));
         }
         c.body["result"] = {{"kind", kind_name(kind)},
                             {"joint_dimension", ws.size()},
                             {"dimension", primary_span(ws).size()},
                             {"witnesses", std::move(items)}};
         finish(c, all, A.basis());
       }},
      {"decompose-gder",
       [](Ctx& c) {
         need_names(c.args, 1, "decompose-gder <algebra> --k <int> --l <int> --degree <D>");
         need_degree(c.args.degree);
         const auto& A = c.W.algebra(c.args.names[0]);
         const auto ws = solve_generalized(A, MapKind::GDer, c.args.k, c.args.l, c.args.degree);
         CheckReport all;
         json items = json::array();
         for (std::size_t i = 0; i < ws.size(); ++i) {
           try {
             auto [qd, qc] = decompose_gder(A, ws[i]);
             items.push_back({{"qder", map_json(qd.maps[0])}, {"companion", map_json(qd.maps[1])}, {"qc", map_json(qc.maps[0])}});
           } catch (const VerificationFailure& e) {
             prefix_merge(all, e.report(), {static_cast<int>(i)});
             items.push_back(nullptr);
           }
         }
         c.body["result"] = {{"witnesses", ws.size()}, {"decompositions", std::move(items)}};
         finish(c, all, A.basis());
       }},
      {"centroid-check",
       [](Ctx& c) {
         need_names(c.args, 1, "centroid-check <algebra> --k <int> --l <int> --degree <D> [--center-degree <D>]");
         need_degree(c.args.degree);
         need_degree(c.args.center_degree);
         const auto& A = c.W.algebra(c.args.names[0]);
         const auto C = solve_generalized(A, MapKind::C, c.args.k, c.args.l, c.args.degree);
         const auto Q = solve_generalized(A, MapKind::QC, c.args.k, c.args.l, c.args.degree);
         CheckReport all;
         for (std::size_t i = 0; i < C.size(); ++i)
           for (std::size_t j = 0; j < Q.size(); ++j)
             prefix_merge(all, check_centroid_bracket_central(A, C[i], Q[j], c.args.center_degree),
                          {static_cast<int>(i), static_cast<int>(j)});
         const auto Z = center(A, c.args.center_degree);
         all.notes.push_back("center dimension at degree <= " + std::to_string(c.args.center_degree) + ": " +
                             std::to_string(Z.size()));
         c.body["result"] = {{"centroid_dimension", C.size()}, {"quasicentroid_dimension", Q.size()}, {"center_dimension", Z.size()}};
         finish(c, all, A.basis());
       }},
      {"center",
       [](Ctx& c) {
         need_names(c.args, 1, "center <algebra> --degree <D>");
         need_degree(c.args.degree);
         const auto& A = c.W.algebra(c.args.names[0]);
         json items = json::array();
         const auto Z = center(A, c.args.degree);
         for (const auto& z : Z) items.push_back(render_element(z, A.basis()));
         c.body["result"] = {{"dimension", Z.size()}, {"basis", std::move(items)}};
         finish(c, CheckReport{}, A.basis());
       }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, h] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

std::string_view command_summary(const std::string& cmd) {
  static const std::map<std::string, std::string_view> text{
      {"check", "verify the axioms of a conformal algebra"},
      {"check-module", "verify the module axioms"},
      {"check-bihom-lie", "verify a finite-dimensional BiHom-Lie algebra"},
      {"twist", "Yau twist by two operators"},
      {"affinize", "conformal algebra over a BiHom-Lie algebra"},
      {"semidirect", "semidirect product with a module"},
      {"extend-derivation", "one-line extension by a map, then check it"},
      {"d", "apply the differential to a cochain"},
      {"d2-check", "d squared on a truncated cochain basis"},
      {"cochain-basis", "truncated cochain space"},
      {"cohomology-report", "ranks of d around a truncated cochain space"},
      {"nijenhuis-check", "Nijenhuis identity for an operator"},
      {"deform", "deformation generated by a Nijenhuis operator"},
      {"triviality-check", "whether an operator trivializes a deformation"},
      {"derivations", "solve for twisted derivations"},
      {"inner", "inner derivation of an element"},
      {"gder", "solve for generalized derivations of a kind"},
      {"decompose-gder", "split solved generalized derivations"},
      {"centroid-check", "centroid and quasicentroid commutators"},
      {"center", "truncated center"},
  };
  auto it = text.find(cmd);
  return it == text.end() ? std::string_view{} : it->second;
}

Report run_command(const Workspace& W, const std::string& cmd, const CommandArgs& args) {
  auto it = handlers().find(cmd);
  if (it == handlers().end()) throw UsageError("unknown command '" + cmd + "'");
  Ctx c{W, args, json::object()};
  c.body["schema"] = kReportSchema;
  c.body["command"] = cmd;
  json a = {{"names", args.names}, {"degree", args.degree}, {"k", args.k}, {"l", args.l}, {"arity", args.arity}};
  a["s"] = args.s ? json(*args.s) : json(nullptr);
  a["center_degree"] = args.center_degree;
  a["kind"] = args.kind;
  c.body["arguments"] = std::move(a);
  try {
    it->second(c);
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  } catch (const ShapeError& e) {
    throw UsageError(e.what());
  }
  return Report{std::move(c.body)};
}

std::string emit_report(const Report& r, Format format) {
  if (format == Format::Json) return r.body.dump(2) + "\n";
  std::ostringstream out;
  out << r.body.value("command", "") << ": " << (r.passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& [key, value] : r.body.items()) {
    if (key == "schema" || key == "command" || key == "passed") continue;
    if (key == "failures") {
      for (const auto& f : value)
        out << "  failure " << f["tag"].get<std::string>() << " at " << f["witness"].dump() << ": "
            << f["residual"].get<std::string>() << "\n";
      continue;
    }
    if (key == "notes") {
      for (const auto& n : value) out << "  note: " << n.get<std::string>() << "\n";
      continue;
    }
    if (key == "result" && value.is_object()) {
      for (const auto& [k, v] : value.items())
        out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      continue;
    }
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
  return out.str();
}

}  // namespace bhlc
