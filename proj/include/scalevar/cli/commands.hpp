#ifndef SCALEVAR_CLI_COMMANDS_HPP
#define SCALEVAR_CLI_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scalevar/cli/problem_spec.hpp"
#include "scalevar/error.hpp"

namespace scalevar::cli {

using OrderedJson = nlohmann::ordered_json;

enum class ExitCode : int { ok = 0, failure = 1, input_error = 2 };

enum class Format { json, csv };

struct Flags {
  std::optional<std::string> spec_path;
  std::optional<std::string> out_path;
  Format format = Format::json;
  bool format_given = false;
  std::optional<int> grid;
  std::optional<std::vector<double>> eps;
  std::optional<double> tol;
  // deriv only
  std::optional<std::string> curve;
  std::optional<double> from;
  std::optional<double> to;
};

/// One row of a tabular result.
struct Row {
  double x;
  Complex value;
};

struct Report {
  std::string command;
  std::string inputs_digest;
  OrderedJson results = OrderedJson::object();
  std::string verdict;
  std::vector<Row> rows;  // exported as CSV when requested
  double timing_ms = 0.0;
  ExitCode exit = ExitCode::ok;

  OrderedJson to_json() const;
};

std::uint64_t fnv1a(std::string_view bytes);
std::string hex_digest(std::string_view bytes);

/// "x,re,im" header and %.17g rows.
std::string to_csv(const std::vector<Row>& rows);

/// Exit code for a library error: 2 for bad input, 1 for numerical failure.
ExitCode exit_code_for(ErrorKind kind) noexcept;

Report run_command(const std::string& command, const Flags& flags);
Report verify_paper();

/// Full command line entry point; writes the report (or an error object) and
/// returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scalevar::cli

#endif  // SCALEVAR_CLI_COMMANDS_HPP
