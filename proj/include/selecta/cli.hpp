#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace selecta::cli {

enum class OutputFormat { Json, Csv, Text };

/// Exit statuses shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kConfigError = 2,
  kDomainError = 3,
  kNotAttained = 4,
  kNumericError = 5,
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "sample-size", "sample-size-sim", "analyze", "oc-sim", "freq-design", "curve", "report"};
  return names;
}

struct CommandConfig {
  std::string command;
  /// Config document text (the CLI reads --config into this).
  std::string config_text;
  std::optional<OutputFormat> output;  ///< default: text for report, json otherwise
  std::optional<std::string> out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> m;
  /// "key=value" overrides applied to every row; value is parsed as JSON and
  /// falls back to a plain string. Dotted keys address nested fields.
  std::vector<std::string> overrides;
};

struct CommandOutcome {
  int exit_code = kOk;
  /// Rendered output (empty when written to out_path or on failure).
  std::string output;
  /// Machine-readable error object on failure, empty otherwise.
  std::string error;
};

/// Runs one command end to end without touching process state. Output is
/// produced only after every row succeeded, so failures never leave partial
/// results behind.
CommandOutcome run_command(const CommandConfig& config);

OutputFormat parse_output_format(const std::string& name);

/// Reads a whole file; ConfigError when unreadable.
std::string read_file(const std::string& path);

}  // namespace selecta::cli
