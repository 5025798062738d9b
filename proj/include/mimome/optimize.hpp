// SPDX-License-Identifier: Apache-2.0
//
// Optimal number of selected transmit antennas under the large-system
// approximation: exhaustive search over l_t, plus the two closed-form
// single-antenna-receiver cases.
#pragma once

#include <string_view>

#include "mimome/channel.hpp"

namespace mimome {

enum class OptimizeMethod { grid, example1_fixed_point, example2_stationary };

std::string_view to_string(OptimizeMethod method);

struct OptimizeResult {
    double x_star = 1.0;      ///< continuous maximizer (== l_star for grid)
    int l_star = 1;
    double objective_at_l_star = 0.0;
    OptimizeMethod method = OptimizeMethod::grid;
    int iterations = 0;
    bool boundary = false;    ///< maximizer clamped to an end of [1, n_t]
    bool fallback = false;    ///< stationary solve failed, golden section used
};

/// What the grid search maximizes.
struct Objective {
    enum class Kind { ergodic, outage } kind = Kind::ergodic;
    double r_out = 0.0;

    static Objective ergodic() { return {}; }
    static Objective outage(double r_out) { return {Kind::outage, r_out}; }
};

/// Evaluates the analytic objective (ergodic rate, or 1 - outage) at every
/// l_t in 1..n_t and returns the argmax, smaller l_t winning ties.
/// The template's l_t is ignored.
OptimizeResult optimal_lt_grid(const SystemConfig& cfg_template, Objective objective);

/// Asymptotic secrecy mean with single-antenna receivers, as a function of a
/// continuous number of selected antennas x.
double example1_objective(double x, int n_t, double rho_m, double rho_e);

/// Maximizer of example1_objective from its stationarity condition
///   rho_e x + ln x + rho_e / rho_m = ln n_t   on [1, n_t].
/// When the left side already exceeds ln n_t at x = 1 the result is l_star = 1
/// with `boundary` set.
OptimizeResult example1_fixed_point(int n_t, double rho_m, double rho_e);

/// Components of the single-antenna-receiver, large-eavesdropper objective.
struct Example2Terms {
    double mean = 0.0;  ///< f(x)
    double sd = 0.0;    ///< s(x)
};

/// f(x) = log2[(1 + rho_m x (1 + ln(n_t / x))) / (1 + rho_e n_e)^x] and
/// s(x)^2 = log2(e)^2 [rho_m^2 x (2 - x/n_t) / (1 + rho_m x (1 + ln(n_t/x)))^2 + x / n_e].
/// Throws DomainError for x <= 0.
Example2Terms example2_terms(double x, int n_t, int n_e, double rho_m, double rho_e);

/// c(x) = s phi(f/s) + f Q(-f/s): the ergodic approximation at continuous x.
double example2_objective(double x, int n_t, int n_e, double rho_m, double rho_e);

/// c'(x) = s' phi(h) + f' Q(-h), with f' and s' by central differences
/// (step 1e-4 * max(1, x)).
double example2_slope(double x, int n_t, int n_e, double rho_m, double rho_e);

/// Root of c'(x) on [1, n_t]; golden-section maximization of c if the root
/// solve fails.
OptimizeResult example2_stationary(int n_t, int n_e, double rho_m, double rho_e);

}  // namespace mimome
