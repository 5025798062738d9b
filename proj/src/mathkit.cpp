// SPDX-License-Identifier: Apache-2.0
#include "mimome/mathkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mimome/errors.hpp"

namespace mimome::math {

void RootSolveSettings::validate() const
{
    if (!(abs_tol > 0.0))
        throw DomainError("root solve: abs_tol must be positive");
    if (max_iter < 1)
        throw DomainError("root solve: max_iter must be at least 1");
    if (!(bracket_lo < bracket_hi))
        throw DomainError("root solve: bracket_lo must be below bracket_hi");
}

double std_normal_pdf(double x)
{
    return std::exp(-0.5 * x * x) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
}

double q_function(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double chi_square_pdf(double x, int n)
{
    if (n < 1)
        throw DomainError("chi_square_pdf: n must be >= 1");
    if (x < 0.0)
        return 0.0;
    if (x == 0.0)
        return n == 1 ? 1.0 : 0.0;
    return std::exp((n - 1) * std::log(x) - x - std::lgamma(static_cast<double>(n)));
}

double upper_tail(double u, int n)
{
    if (n < 1)
        throw DomainError("upper_tail: n must be >= 1");
    if (u < 0.0)
        throw DomainError("upper_tail: u must be non-negative");
    if (u == 0.0)
        return 1.0;

    // Poisson sum, each term formed in log space so large n does not overflow.
    const double log_u = std::log(u);
    const auto term = [&](int k) { return std::exp(k * log_u - u - std::lgamma(k + 1.0)); };

    // Below the Poisson mode the head sum sits near 1 and rounding hides
    // its decrease; sum the (decaying) complementary tail instead.
    if (u < n) {
        double tail = 0.0;
        for (int k = n;; ++k) {
            const double t = term(k);
            tail += t;
            if (t <= tail * 1e-17 || k > n + 100000)
                break;
        }
        return std::clamp(1.0 - tail, 0.0, 1.0);
    }
    double sum = 0.0;
    for (int k = 0; k < n; ++k)
        sum += term(k);
    return std::clamp(sum, 0.0, 1.0);
}

namespace {

double central_difference(const std::function<double(double)>& f, double x)
{
    const double h = 1e-7 * std::max(1.0, std::abs(x));
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace

RootResult solve_monotone_root(const std::function<double(double)>& f,
                               const RootSolveSettings& settings,
                               const std::function<double(double)>& derivative)
{
    settings.validate();
    const double tol = settings.abs_tol;

    double lo = settings.bracket_lo;
    double hi = settings.bracket_hi;
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (std::abs(f_lo) <= tol)
        return {lo, 0};
    if (std::abs(f_hi) <= tol)
        return {hi, 0};
    if (!std::isfinite(f_lo) || !std::isfinite(f_hi) || f_lo * f_hi > 0.0)
        throw NoSignChange("root solve: no sign change on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");

    double x = 0.5 * (lo + hi);
    double step_before_last = hi - lo;
    double last_step = step_before_last;

    for (int iter = 1; iter <= settings.max_iter; ++iter) {
        const double fx = f(x);
        if (std::abs(fx) <= tol)
            return {x, iter};

        if ((fx < 0.0) == (f_lo < 0.0)) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)))
            break;

        const double slope = derivative ? derivative(x) : central_difference(f, x);
        const double newton = x - fx / slope;
        const bool outside = !std::isfinite(newton) || newton <= lo || newton >= hi;
        // Newton must at least halve the step taken two iterations ago.
        const bool slow = std::abs(newton - x) > 0.5 * std::abs(step_before_last);

        step_before_last = last_step;
        if (outside || slow) {
            const double mid = 0.5 * (lo + hi);
            last_step = mid - x;
            x = mid;
        } else {
            last_step = newton - x;
            x = newton;
        }
    }
    throw NoConvergence("root solve: |f(x)| <= " + std::to_string(tol) + " not reached after " +
                        std::to_string(settings.max_iter) + " iterations");
}

RootResult golden_section_maximize(const std::function<double(double)>& f, double lo,
                                   double hi, double x_tol, int max_iter)
{
    if (!(lo < hi))
        throw DomainError("golden section: empty interval");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int iter = 0;
    while (b - a > x_tol && iter < max_iter) {
        ++iter;
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return {0.5 * (a + b), iter};
}

}  // namespace mimome::math
