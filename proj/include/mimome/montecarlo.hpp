// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo trial harness. Trial t of a plan draws its channels from
// RngStream(seed, t) and results are reduced in trial order, so estimates are
// bit-identical for any number of worker threads.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mimome/channel.hpp"

namespace mimome {

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n_trials = 0;
    double ci95_halfwidth = 0.0;  ///< 1.96 * std_error
};

struct TrialPlan {
    std::uint64_t seed = 1;
    std::int64_t n_trials = 1;
    std::optional<double> r_out;  ///< outage target rate [bits]

    void validate() const;
};

struct RunOptions {
    unsigned workers = 0;  ///< 0 picks std::thread::hardware_concurrency()
    EavesdropperChannel eve = EavesdropperChannel::independent;
};

struct RstarMoments {
    double mean = 0.0;
    double std = 0.0;
};

/// Everything one pass over the trials can report.
struct SimulationSummary {
    Estimate ergodic;
    std::optional<Estimate> outage;
    RstarMoments rstar;
};

SimulationSummary simulate(const SystemConfig& cfg, const TrialPlan& plan,
                           const RunOptions& options = {});

/// Mean secrecy rate over the plan's trials.
Estimate estimate_ergodic(const SystemConfig& cfg, const TrialPlan& plan,
                          const RunOptions& options = {});

/// Fraction of trials with r_s < r_out, binomial standard error.
/// Throws MissingThreshold if the plan has no r_out.
Estimate estimate_outage(const SystemConfig& cfg, const TrialPlan& plan,
                         const RunOptions& options = {});

/// Sample mean and standard deviation of the unclipped r_m - r_e.
RstarMoments empirical_rstar_moments(const SystemConfig& cfg, const TrialPlan& plan,
                                     const RunOptions& options = {});

/// Every trial's r_m - r_e, in trial order.
std::vector<double> sample_rstar(const SystemConfig& cfg, const TrialPlan& plan,
                                 const RunOptions& options = {});

/// Skewness/kurtosis (Jarque-Bera) normality test.
struct NormalityTest {
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double statistic = 0.0;  ///< n/6 (S^2 + K^2/4)
    double p_value = 1.0;    ///< chi-square(2) survival: exp(-statistic/2)
};

NormalityTest jarque_bera(std::span<const double> sample);

}  // namespace mimome
