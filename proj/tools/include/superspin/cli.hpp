#pragma once

// Job runner behind the superspin-cli executable. Every command returns a
// JSON report and an exit code: 0 success, 2 invalid input, 3 numerical
// gate (including a failing verify section).

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "superspin/grassmann.hpp"

namespace superspin::cli {

enum class Command { canonicalize, isometry_check, lie_basis, group_op, verify };

std::optional<Command> command_from_string(const std::string& name);
std::string to_string(Command command);

struct JobSpec {
  Command command = Command::verify;
  AlgebraConfig algebra;
  nlohmann::json inputs = nlohmann::json::object();
  std::uint64_t seed = 42;
  bool strict = false;
};

struct Report {
  nlohmann::json document;
  int exit_code = 0;

  /// Pretty-printed document with a trailing newline.
  std::string text() const;
};

/// Command-line overrides applied on top of the config file.
struct Overrides {
  std::optional<std::string> mode = {};
  std::optional<int> generators = {};
  std::optional<std::uint64_t> seed = {};
  std::optional<int> m = {};
  std::optional<int> n = {};
  bool strict = false;
};

Report run(const JobSpec& job);

/// Parses `config_text` ({"algebra": ..., "inputs": ..., "seed": ...}; may be
/// empty), applies the overrides and runs. Parse failures become exit-2
/// reports carrying the byte offset or JSON pointer.
Report run_text(Command command, const std::string& config_text, const Overrides& overrides);

}  // namespace superspin::cli
