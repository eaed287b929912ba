#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "anosov/errors.hpp"
#include "anosov/report.hpp"
#include "anosov_cli/commands.hpp"

namespace {

using anosov::cli::CommandResult;
using anosov::cli::RunConfig;

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "key = value config file");
    cmd->add_option("--seed", flags.seed, "random seed (overrides the config)");
    cmd->add_option("--samples", flags.samples, "sampled words per suite (overrides the config)");
    cmd->add_option("--out", flags.out, "write the report to this file instead of stdout");
    cmd->add_option("--format", flags.format, "report format")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperbolic surgery models: verification and combinatorics"};
    app.footer(anosov::cli::config_help() +
               "\nExit codes: 0 pass, 1 verification failure, 2 usage or config error.");
    app.require_subcommand(1);
    CommonFlags flags;
    std::string chosen;
    const std::pair<const char*, const char*> commands[] = {
        {"verify", "run the cone, volume and transversality checks"},
        {"search", "halve r1 until the cone suites pass"},
        {"combinatorics", "quadrant permutations, defects and intersections"},
        {"trace", "orbit samples through V"},
        {"fixture", "cat-map end-to-end scenario"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* cmd = app.add_subcommand(name, help);
        add_common(cmd, flags);
        cmd->callback([&chosen, n = std::string(name)] { chosen = n; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : anosov::cli::kExitUsage;
    }

    try {
        RunConfig config;
        if (!flags.config_path.empty()) config = anosov::cli::load_config(flags.config_path);
        if (flags.seed) config.seed = *flags.seed;
        if (flags.samples) config.words = *flags.samples;
        anosov::cli::validate_config(config);
        const auto format = anosov::cli::format_from_string(flags.format);

        CommandResult result;
        if (chosen == "verify") result = anosov::cli::cmd_verify(config, format);
        else if (chosen == "search") result = anosov::cli::cmd_search(config, format);
        else if (chosen == "combinatorics") result = anosov::cli::cmd_combinatorics(config, format);
        else if (chosen == "trace") result = anosov::cli::cmd_trace(config, format);
        else result = anosov::cli::cmd_fixture(config, format);

        if (flags.out.empty()) {
            std::cout << result.report;
        } else {
            anosov::write_file_atomic(flags.out, result.report);
        }
        return result.exit_code;
    } catch (const anosov::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return anosov::cli::kExitUsage;
    } catch (const anosov::ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return anosov::cli::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return anosov::cli::kExitFail;
    }
}
