// SPDX-License-Identifier: Apache-2.0
//
// mimome: run a scenario, sweep or optimization described by a JSON config.
//
//   mimome config.json [--seed N] [--trials N] [--output PATH]
//
// Exit status: 0 on success, 2 for an invalid config, 3 for a numerical
// failure at a sweep point.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mimome/run_config.hpp"
#include "mimome/runner.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Secrecy-rate simulator and large-system analysis for antenna selection"};
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> trials;
    std::optional<std::string> output;
    app.add_option("config", config_path, "JSON run configuration")->required();
    app.add_option("--seed", seed, "Override the config's seed");
    app.add_option("--trials", trials, "Override the config's trial count")->check(CLI::PositiveNumber);
    app.add_option("--output", output, "Override the output path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::cerr << config_path << ": cannot open config file\n";
        return kConfigError;
    }
    std::ostringstream text;
    text << in.rdbuf();

    mimome::cli::RunConfig config;
    try {
        config = mimome::cli::parse_run_config(text.str());
        if (seed)
            config.seed = *seed;
        if (trials)
            config.trials = *trials;
        if (output)
            config.output_path = *output;
        config.validate();
    } catch (const mimome::cli::ConfigError& e) {
        std::cerr << config_path << ": " << e.what() << "\n";
        return kConfigError;
    }

    try {
        const auto result = mimome::cli::run(config, mimome::cli::workers_from_environment());
        for (const auto& w : result.warnings)
            std::cerr << w << "\n";
        mimome::cli::write_output(config.output_path, result.output);
    } catch (const mimome::cli::SweepPointError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumericalError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
