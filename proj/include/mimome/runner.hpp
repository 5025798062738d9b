// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mimome/run_config.hpp"

namespace mimome::cli {

inline constexpr std::string_view kCsvHeader =
    "variable,value,eta,sigma,r_erg_approx,r_erg_sim,sim_stderr,p_out_approx,p_out_sim,"
    "outage_stderr";

/// A computation failed at one sweep point; what() names the point.
class SweepPointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunResult {
    std::string output;                 ///< rendered CSV or JSON
    std::vector<std::string> warnings;  ///< out-of-regime notices, one per point
};

/// Evaluates every sweep point in order and renders the records.
RunResult run(const RunConfig& config, unsigned workers);

/// Worker count: MIMOME_THREADS when set to a positive integer, otherwise
/// the machine's hardware concurrency.
unsigned workers_from_environment();

/// Writes `text` to `path` through a temporary file and rename; "-" means
/// standard output.
void write_output(const std::string& path, std::string_view text);

}  // namespace mimome::cli
