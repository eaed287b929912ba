#pragma once

#include <string>

#include "anosov_cli/config.hpp"

namespace anosov::cli {

enum class Format { Json, Csv };

Format format_from_string(const std::string& name);

/// Exit codes shared by every subcommand.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Output of a subcommand: the exit code and the report text.
struct CommandResult {
    int exit_code = kExitPass;
    std::string report;
};

/// Six cone checks, the volume check and helicoid transversality at the configured
/// parameters. Passes iff nothing is violated.
CommandResult cmd_verify(const RunConfig& config, Format format);

/// Parameter search; passes iff feasible parameters were found within the budget.
CommandResult cmd_search(const RunConfig& config, Format format);

/// Permutation, defect and intersection table over the configured (n, m) range.
CommandResult cmd_combinatorics(const RunConfig& config, Format format);

/// Orbit trace through V from the entrance annulus of the configured quadrant.
CommandResult cmd_trace(const RunConfig& config, Format format);

/// Cat-map end-to-end scenario.
CommandResult cmd_fixture(const RunConfig& config, Format format);

}  // namespace anosov::cli
