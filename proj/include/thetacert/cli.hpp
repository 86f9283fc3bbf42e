#pragma once

#include "thetacert/json_io.hpp"

#include <string>

namespace thetacert {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 2,
  kExitConfigError = 3,
  kExitBudgetExceeded = 4,
};

struct CommandResult {
  Json report;
  int exit_code = kExitOk;
};

/// Runs one subcommand. Config and domain errors propagate as exceptions;
/// exit_code_for maps them.
CommandResult run_command(const RunConfig& config);

int exit_code_for(const std::exception& e);

/// Resolves a lattice given by name ("E8+Z4") or by a path to lattice JSON.
Lattice resolve_lattice(const std::string& spec);

/// Flat "key: value" rendering of a report for --pretty.
std::string pretty_print(const Json& report);

}  // namespace thetacert
