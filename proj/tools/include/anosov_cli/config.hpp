#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "anosov/geometry.hpp"
#include "anosov/hyperbolicity.hpp"

namespace anosov::cli {

/// Settings of one CLI run. Every value has a default; a config file overrides the
/// defaults and command-line flags override the file.
struct RunConfig {
    ModelParams params{};
    double t1 = -1.0;          ///< interior-time bound for verify; < 0 means the re-entry bound
    double r1_ref = 0.4;       ///< radius the halvings and the re-entry bound start from
    double ratio = 0.25;       ///< r2 / r1 kept by the search
    int budget = 12;           ///< maximal number of halvings
    int grid = 400;            ///< constant-estimation grid
    std::size_t words = 2000;  ///< sampled words per suite
    std::size_t max_factors = 9;
    std::uint64_t seed = 1;
    double interior_spread = 2.0;
    int slope_samples = 5;
    ConePolicy policy = ConePolicy::Adaptive;
    int transversality_grid = 200;
    int helicoid_density = 64;
    std::size_t volume_samples = 10000;
    int n_max = 4;
    int m_max = 1;
    double trace_r = 0.05;
    int trace_quadrant = 1;
    int trace_samples = 50;
    std::string mesh_out;  ///< optional CSV path for the transversality mesh
};

/// Parses "key = value" lines; '#' starts a comment. Throws ConfigError on syntax
/// errors, unknown keys or values that violate a module precondition.
RunConfig parse_config(const std::string& text, RunConfig base = {});

/// Reads and parses a config file.
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Checks every numeric setting; throws ConfigError with the first violation.
void validate_config(const RunConfig& config);

/// All settings as strings, for echoing into reports.
std::map<std::string, std::string> describe(const RunConfig& config);

/// Keys accepted in a config file with their defaults, one per line.
std::string config_help();

}  // namespace anosov::cli
