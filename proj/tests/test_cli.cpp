#include "bhlc/commands.hpp"
#include "bhlc/workspace.hpp"

#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace bhlc;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Workspace shipped() {
  std::vector<SourceText> sources;
  for (const auto& e : fs::directory_iterator(BHLC_TEST_DATA_DIR))
    if (e.path().extension() == ".bhlc") sources.push_back({e.path().string(), slurp(e.path())});
  std::sort(sources.begin(), sources.end(),
            [](const SourceText& a, const SourceText& b) { return a.name < b.name; });
  return load_definitions(sources);
}

ParseError parse_failure(std::string_view text) {
  try {
    parse_definitions(text, "t.bhlc");
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  throw std::logic_error("unreachable");
}

CommandArgs names(std::initializer_list<std::string> n) {
  CommandArgs a;
  a.names = n;
  return a;
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(BHLC_TOOL) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("minimal abelian definition") {
  const Workspace W = parse_definitions("algebra ab rank 1 basis e\n");
  const ConformalAlgebra& A = W.algebra("ab");
  CHECK(A.rank() == 1);
  CHECK(A.basis() == std::vector<std::string>{"e"});
  CHECK(is_zero(A.bracket(0, 0)));
  CHECK_THROWS_AS(W.algebra("missing"), std::out_of_range);
}

TEST_CASE("coefficients, numeric indices and comments") {
  const Workspace W = parse_definitions(
      "# header comment\n"
      "algebra v rank 2 basis x y\n"
      "  bracket x y -> (del + 2*l0) y   # trailing\n"
      "  bracket 2 1 -> -l0 y\n"
      "  alpha 2: 0, 3/2\n");
  const ConformalAlgebra& A = W.algebra("v");
  CHECK(A.bracket(0, 1)(1) == del() + Poly(2) * slot(0));
  CHECK(A.bracket(1, 0)(1) == -slot(0));
  CHECK(A.alpha()(1, 1) == Poly(Rational(3, 2)));
  CHECK(A.alpha()(0, 0) == Poly(1));
}

TEST_CASE("parse error kinds carry positions") {
  SUBCASE("unresolved reference") {
    const ParseError e = parse_failure("module m over nowhere rank 1 basis v\n");
    CHECK(e.kind() == ParseErrorKind::UnresolvedReference);
    CHECK(error_code(e.kind()) == "unresolved-reference");
    CHECK(e.line() == 1);
  }
  SUBCASE("syntax error reports line and column") {
    const ParseError e = parse_failure("algebra a rank 1 basis e\n  bracket e e => e\n");
    CHECK(e.kind() == ParseErrorKind::Syntax);
    CHECK(e.line() == 2);
    CHECK(e.column() > 1);
    CHECK(std::string(e.what()).rfind("t.bhlc:2:", 0) == 0);
  }
  SUBCASE("duplicate name") {
    const ParseError e =
        parse_failure("algebra a rank 1 basis e\nalgebra a rank 1 basis f\n");
    CHECK(e.kind() == ParseErrorKind::DuplicateName);
    CHECK(e.line() == 2);
  }
  SUBCASE("rank mismatch") {
    const ParseError e = parse_failure("algebra a rank 2 basis e\n");
    CHECK(e.kind() == ParseErrorKind::RankMismatch);
    CHECK(error_code(e.kind()) == "rank-mismatch");
  }
  SUBCASE("twist row of the wrong length") {
    const ParseError e = parse_failure("algebra a rank 2 basis x y\n  alpha x: 1\n");
    CHECK(e.kind() == ParseErrorKind::RankMismatch);
    CHECK(e.line() == 2);
  }
  SUBCASE("reserved basis name") {
    CHECK(parse_failure("algebra a rank 1 basis del\n").kind() == ParseErrorKind::Syntax);
  }
}

TEST_CASE("forward references across sources") {
  const Workspace W = load_definitions({
      {"a.bhlc", "clm d over base\n  entry 1 1: l0\n"},
      {"b.bhlc", "algebra base rank 1 basis e\n"},
  });
  CHECK(W.map("d").over == "base");
  CHECK(W.map("d").map.entries(0, 0) == slot(0));
}

TEST_CASE("shipped definitions survive a render round trip") {
  const Workspace W = shipped();
  CHECK(W.algebras.count("twisted2") == 1);
  CHECK(W.algebras.count("broken_skew") == 1);
  const std::string text = render(W);
  const Workspace again = parse_definitions(text, "rendered");
  CHECK(again == W);
  CHECK(render(again) == text);
}

TEST_CASE("semidirect output renders to a parseable definition") {
  const Workspace W = shipped();
  const Report r = run_command(W, "semidirect", names({"twisted2", "adj2"}));
  REQUIRE(r.passed());
  const std::string def = r.body["result"]["definition"].get<std::string>();
  const Workspace S = parse_definitions(def);
  CHECK(S.algebras.begin()->second.rank() == 4);
}

TEST_CASE("command results") {
  const Workspace W = shipped();

  const Report ok = run_command(W, "check", names({"abelian1"}));
  CHECK(ok.passed());
  CHECK(ok.exit_code() == 0);
  CHECK(ok.body["schema"] == kReportSchema);

  CommandArgs d2 = names({"twisted2"});
  d2.arity = 1;
  d2.degree = 2;
  const Report sq = run_command(W, "d2-check", d2);
  CHECK(sq.passed());
  CHECK(sq.body["result"]["cochains"].get<int>() > 0);

  CommandArgs der = names({"abelian1"});
  der.degree = 2;
  const Report dr = run_command(W, "derivations", der);
  CHECK(dr.body["result"]["dimension"] == 6);

  const Report bad = run_command(W, "check", names({"broken_skew"}));
  CHECK_FALSE(bad.passed());
  CHECK(bad.exit_code() == 1);
  REQUIRE_FALSE(bad.body["failures"].empty());
  CHECK(bad.body["failures"][0]["tag"] == "skew");
  CHECK(bad.body["failures"][0]["residual"] == "2 y");

  CHECK_THROWS_AS(run_command(W, "no-such-command", {}), UsageError);
  CHECK_THROWS_AS(run_command(W, "check", names({"nope"})), UsageError);
  CHECK_THROWS_AS(run_command(W, "check", {}), UsageError);
}

TEST_CASE("reports are byte-identical across runs") {
  const Workspace W = shipped();
  CommandArgs der = names({"twisted2"});
  der.degree = 1;
  for (const std::string cmd : {"check", "derivations", "center"}) {
    const std::string first = emit_report(run_command(W, cmd, der), Format::Json);
    const std::string second = emit_report(run_command(shipped(), cmd, der), Format::Json);
    CHECK(first == second);
    CHECK(emit_report(run_command(W, cmd, der), Format::Text) ==
          emit_report(run_command(W, cmd, der), Format::Text));
  }
}

TEST_CASE("every listed command is dispatchable") {
  const Workspace W = shipped();
  for (const auto& cmd : command_names())
    CHECK_THROWS_AS(run_command(W, cmd, {}), UsageError);
}

TEST_CASE("tool exit codes") {
  CHECK(run_tool("check abelian1") == 0);
  CHECK(run_tool("check broken_skew") == 1);
  CHECK(run_tool("check no_such_algebra") == 2);
  CHECK(run_tool("frobnicate") == 2);
  CHECK(run_tool("--format text derivations abelian1 --degree 2") == 0);

  const fs::path bad = fs::temp_directory_path() / "bhlc_test_bad.bhlc";
  std::ofstream(bad) << "algebra a rank 2 basis x\n";
  CHECK(run_tool("-f " + bad.string() + " check a") == 2);
  fs::remove(bad);
}
