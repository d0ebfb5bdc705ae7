#include "bhlc/commands.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Shipped definition files when no -f is given.
std::vector<fs::path> default_files() {
  std::vector<fs::path> out;
  const fs::path dir = BHLC_DATA_DIR;
  if (fs::is_directory(dir))
    for (const auto& e : fs::directory_iterator(dir))
      if (e.path().extension() == ".bhlc") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BiHom-Lie conformal algebra toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::vector<std::string> files;
  std::string format = "json";
  bhlc::CommandArgs args;
  std::optional<int> s;
  app.add_option("-f,--file", files, "definition file (repeatable; defaults to the shipped examples)");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  bool render_only = false;
  for (const auto& name : bhlc::command_names()) {
    auto* sub = app.add_subcommand(name, std::string(bhlc::command_summary(name)));
    sub->add_option("names", args.names, "object names and arguments");
    sub->add_option("--degree", args.degree, "degree bound D");
    sub->add_option("--k", args.k, "alpha exponent");
    sub->add_option("--l", args.l, "beta exponent");
    sub->add_option("--s", s, "twist index of d_s");
    sub->add_option("--arity", args.arity, "cochain arity")->check(CLI::Range(0, 9));
    sub->add_option("--center-degree", args.center_degree, "degree bound for the center");
    sub->add_option("--kind", args.kind, "gder, qder, c, qc or zder");
  }
  app.add_subcommand("render", "print the loaded definitions in canonical form")
      ->callback([&] { render_only = true; });
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  args.s = s;

  bhlc::Workspace W;
  try {
    std::vector<bhlc::SourceText> sources;
    std::vector<fs::path> paths(files.begin(), files.end());
    if (paths.empty()) paths = default_files();
    for (const auto& p : paths) sources.push_back({p.string(), slurp(p)});
    W = bhlc::load_definitions(sources);
  } catch (const bhlc::ParseError& e) {
    std::cerr << "error[" << bhlc::error_code(e.kind()) << "] " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error[io] " << e.what() << "\n";
    return 2;
  }
  if (render_only) {
    std::cout << bhlc::render(W);
    return 0;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    const bhlc::Report r = bhlc::run_command(W, cmd, args);
    std::cout << bhlc::emit_report(r, format == "text" ? bhlc::Format::Text : bhlc::Format::Json);
    return r.exit_code();
  } catch (const bhlc::UsageError& e) {
    std::cerr << "error[usage] " << e.what() << "\n";
    return 2;
  }
}
