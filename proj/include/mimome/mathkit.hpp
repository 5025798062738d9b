// SPDX-License-Identifier: Apache-2.0
//
// Special functions and scalar root finding shared by the analytic code.
#pragma once

#include <functional>
#include <optional>

namespace mimome::math {

inline constexpr double kLog2E = 1.4426950408889634074;  // log2(e)

struct RootSolveSettings {
    double abs_tol = 1e-12;
    int max_iter = 200;
    double bracket_lo = 0.0;
    double bracket_hi = 1.0;

    void validate() const;
};

struct RootResult {
    double x = 0.0;
    int iterations = 0;
};

/// Standard normal density.
double std_normal_pdf(double x);

/// Gaussian tail probability Q(x) = P(N(0,1) > x), evaluated through erfc.
double q_function(double x);

/// Density of a Gamma(n, 1) variable, i.e. the squared norm of an n-entry
/// unit-variance complex Gaussian vector (chi-square with 2n degrees of
/// freedom scaled to mean n). Zero for x < 0.
double chi_square_pdf(double x, int n);

/// Upper tail of chi_square_pdf: exp(-u) * sum_{k<n} u^k / k!.
double upper_tail(double u, int n);

/// Safeguarded Newton iteration on a bracketed, monotone function.
///
/// Newton steps that leave the current bracket (or fail to shrink it fast
/// enough) are replaced by bisection. Without an analytic derivative a
/// central difference with step 1e-7 * max(1, |x|) is used.
/// Throws NoSignChange if f(lo) and f(hi) share a sign, NoConvergence if
/// |f(x)| <= abs_tol is not reached within max_iter iterations.
RootResult solve_monotone_root(const std::function<double(double)>& f,
                               const RootSolveSettings& settings,
                               const std::function<double(double)>& derivative = {});

/// Golden-section search for the maximizer of a unimodal function on [lo, hi].
RootResult golden_section_maximize(const std::function<double(double)>& f,
                                   double lo, double hi, double x_tol = 1e-10,
                                   int max_iter = 500);

}  // namespace mimome::math
