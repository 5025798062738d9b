// SPDX-License-Identifier: Apache-2.0
//
// JSON run configuration for the command-line front end. SNRs are given in
// dB here and converted to linear power ratios on ingestion.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mimome/channel.hpp"
#include "mimome/optimize.hpp"

namespace mimome::cli {

enum class Mode { simulate, approx, optimize, compare };
enum class OutputFormat { csv, json };
enum class SweepVariable { l_t, rho_m_db, rho_e_db };

std::string_view to_string(Mode mode);
std::string_view to_string(SweepVariable variable);

struct Sweep {
    SweepVariable variable = SweepVariable::l_t;
    std::vector<double> values;
};

/// Scenario as written in the config: counts plus SNRs in dB.
struct Scenario {
    int n_t = 1;
    int n_r = 1;
    int n_e = 1;
    int l_t = 1;
    double rho_m_db = 0.0;
    double rho_e_db = 0.0;

    /// Linear-SNR system configuration.
    [[nodiscard]] SystemConfig system() const;
};

enum class OptimizeChoice { automatic, grid, example1_fixed_point, example2_stationary };

struct RunConfig {
    Scenario scenario;
    std::optional<Sweep> sweep;
    Mode mode = Mode::approx;
    std::int64_t trials = 10000;
    std::uint64_t seed = 1;
    std::optional<double> r_out;
    std::string output_path = "-";
    OutputFormat format = OutputFormat::csv;
    OptimizeChoice optimize_method = OptimizeChoice::automatic;
    Objective::Kind optimize_objective = Objective::Kind::ergodic;

    /// Scenario with the sweep variable set to `value`.
    [[nodiscard]] Scenario at(double value) const;

    /// Re-checks cross-field constraints after command-line overrides.
    void validate() const;
};

/// Validation failure, located at a line of the config text (1-based; 0 if
/// the problem is not tied to a place in the file).
class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& message);
    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

RunConfig parse_run_config(std::string_view text);

double db_to_linear(double db);
double linear_to_db(double linear);

}  // namespace mimome::cli
