#pragma once

// Command dispatch and report rendering for the command-line tool.

#include "bhlc/workspace.hpp"

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bhlc {

inline constexpr const char* kReportSchema = "bhlc.report/1";

/// Raised for unknown commands, missing names and bad flag values (exit 2).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CommandArgs {
  std::vector<std::string> names;  // positional arguments after the command
  int degree = 2;
  int k = 0;
  int l = 0;
  std::optional<int> s;
  int arity = 1;
  int center_degree = 3;
  std::string kind = "gder";
};

struct Report {
  nlohmann::ordered_json body;
  bool passed() const { return body.value("passed", false); }
  int exit_code() const { return passed() ? 0 : 1; }
};

const std::vector<std::string>& command_names();

/// One-line help text; empty for unknown names.
std::string_view command_summary(const std::string& cmd);

/// Throws UsageError; operation errors that amount to a failed hypothesis
/// become failed reports.
Report run_command(const Workspace& W, const std::string& cmd, const CommandArgs& args);

enum class Format { Json, Text };

/// Deterministic rendering; JSON is pretty-printed with two-space indent.
std::string emit_report(const Report& r, Format format);

}  // namespace bhlc
