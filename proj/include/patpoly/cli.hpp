#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "patpoly/error.hpp"
#include "patpoly/suites.hpp"

namespace patpoly {

enum ExitCode : int { exit_pass = 0, exit_mismatch = 1, exit_budget = 2, exit_usage = 3 };

/// Budget errors map to 2, input errors to 3, anything else to 1.
int exit_code_for(const Error& e);

struct CommandResult {
  std::string output;
  int exit_code = exit_pass;
};

std::vector<std::string> compute_ops();

/// Plain value of one operation on the construction named by cfg.spec.
nlohmann::json compute_value(const RunConfig& cfg);

CommandResult cmd_compute(const RunConfig& cfg);
/// Recomputes a table; exit 1 when it differs from the golden data.
CommandResult cmd_table(std::string_view name, const RunConfig& cfg);
/// Runs a suite; exit 1 on a failing non-informational check.
CommandResult cmd_verify(std::string_view suite, const RunConfig& cfg);

}  // namespace patpoly
