// SPDX-License-Identifier: Apache-2.0
#include "mimome/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "mimome/asymptotic.hpp"
#include "mimome/errors.hpp"
#include "mimome/mathkit.hpp"

namespace mimome {

using math::kLog2E;

std::string_view to_string(OptimizeMethod method)
{
    switch (method) {
    case OptimizeMethod::grid:
        return "grid";
    case OptimizeMethod::example1_fixed_point:
        return "example1_fixed_point";
    case OptimizeMethod::example2_stationary:
        return "example2_stationary";
    }
    return "unknown";
}

namespace {

void check_snrs(double rho_m, double rho_e)
{
    if (!(rho_m > 0.0) || !(rho_e > 0.0) || !std::isfinite(rho_m) || !std::isfinite(rho_e))
        throw DomainError("SNRs must be finite and positive");
}

// Integer neighbours of x in [1, n_t]; the better one by `objective` wins,
// round-half-up settling exact ties.
void settle_integer(OptimizeResult& r, int n_t, const std::function<double(double)>& objective)
{
    const int lo = std::clamp(static_cast<int>(std::floor(r.x_star)), 1, n_t);
    const int hi = std::clamp(static_cast<int>(std::ceil(r.x_star)), 1, n_t);
    const double f_lo = objective(lo);
    const double f_hi = objective(hi);
    if (f_lo > f_hi) {
        r.l_star = lo;
    } else if (f_hi > f_lo) {
        r.l_star = hi;
    } else {
        r.l_star = std::clamp(static_cast<int>(std::floor(r.x_star + 0.5)), 1, n_t);
    }
    r.objective_at_l_star = objective(r.l_star);
}

}  // namespace

OptimizeResult optimal_lt_grid(const SystemConfig& cfg_template, Objective objective)
{
    SystemConfig cfg = cfg_template.with_l_t(1);
    cfg.validate();
    if (objective.kind == Objective::Kind::outage && !(objective.r_out >= 0.0))
        throw DomainError("outage objective needs r_out >= 0");

    OptimizeResult best;
    best.method = OptimizeMethod::grid;
    bool first = true;
    for (int l = 1; l <= cfg.n_t; ++l) {
        const AsymptoticMoments m = secrecy_moments(cfg.with_l_t(l));
        const double value = objective.kind == Objective::Kind::ergodic
                                 ? ergodic_approx(m)
                                 : 1.0 - outage_approx(m, objective.r_out);
        if (first || value > best.objective_at_l_star) {
            best.l_star = l;
            best.objective_at_l_star = value;
            first = false;
        }
    }
    best.x_star = best.l_star;
    best.iterations = cfg.n_t;
    best.boundary = best.l_star == 1 || best.l_star == cfg.n_t;
    return best;
}

double example1_objective(double x, int n_t, double rho_m, double rho_e)
{
    if (!(x > 0.0))
        throw DomainError("example1_objective: x must be positive");
    const double main = 1.0 + rho_m * x + rho_m * x * std::log(n_t / x);
    return std::log2(main / (1.0 + rho_e * x));
}

OptimizeResult example1_fixed_point(int n_t, double rho_m, double rho_e)
{
    if (n_t < 1)
        throw DomainError("example1_fixed_point: n_t must be >= 1");
    check_snrs(rho_m, rho_e);

    const auto objective = [&](double x) { return example1_objective(x, n_t, rho_m, rho_e); };
    OptimizeResult r;
    r.method = OptimizeMethod::example1_fixed_point;

    const double log_nt = std::log(static_cast<double>(n_t));
    const auto residual = [&](double x) { return rho_e * x + std::log(x) + rho_e / rho_m - log_nt; };
    if (n_t == 1 || residual(1.0) >= 0.0) {
        r.x_star = 1.0;
        r.l_star = 1;
        r.boundary = true;
        r.objective_at_l_star = objective(1.0);
        return r;
    }

    math::RootSolveSettings settings;
    settings.bracket_lo = 1.0;
    settings.bracket_hi = n_t;
    const auto root = math::solve_monotone_root(residual, settings,
                                                [&](double x) { return rho_e + 1.0 / x; });
    r.x_star = root.x;
    r.iterations = root.iterations;
    settle_integer(r, n_t, objective);
    return r;
}

Example2Terms example2_terms(double x, int n_t, int n_e, double rho_m, double rho_e)
{
    if (!(x > 0.0))
        throw DomainError("example2: x must be positive");
    const double gain = x * (1.0 + std::log(n_t / x));
    const double load = 1.0 + rho_m * gain;

    Example2Terms t;
    t.mean = std::log2(load) - x * std::log2(1.0 + rho_e * n_e);
    const double main_var = rho_m * rho_m * x * (2.0 - x / n_t) / (load * load);
    t.sd = std::sqrt((main_var + x / n_e) * kLog2E * kLog2E);
    return t;
}

double example2_objective(double x, int n_t, int n_e, double rho_m, double rho_e)
{
    const Example2Terms t = example2_terms(x, n_t, n_e, rho_m, rho_e);
    return ergodic_approx(t.mean, t.sd * t.sd);
}

double example2_slope(double x, int n_t, int n_e, double rho_m, double rho_e)
{
    const double h = 1e-4 * std::max(1.0, x);
    const Example2Terms up = example2_terms(x + h, n_t, n_e, rho_m, rho_e);
    const Example2Terms down = example2_terms(x - h, n_t, n_e, rho_m, rho_e);
    const Example2Terms at = example2_terms(x, n_t, n_e, rho_m, rho_e);
    const double df = (up.mean - down.mean) / (2.0 * h);
    const double ds = (up.sd - down.sd) / (2.0 * h);
    const double ratio = at.mean / at.sd;
    return ds * math::std_normal_pdf(ratio) + df * math::q_function(-ratio);
}

OptimizeResult example2_stationary(int n_t, int n_e, double rho_m, double rho_e)
{
    if (n_t < 1 || n_e < 1)
        throw DomainError("example2_stationary: antenna counts must be >= 1");
    check_snrs(rho_m, rho_e);

    const auto objective = [&](double x) {
        return example2_objective(x, n_t, n_e, rho_m, rho_e);
    };
    OptimizeResult r;
    r.method = OptimizeMethod::example2_stationary;
    if (n_t == 1) {
        r.boundary = true;
        r.objective_at_l_star = objective(1.0);
        return r;
    }

    const auto slope = [&](double x) { return example2_slope(x, n_t, n_e, rho_m, rho_e); };
    // The slope is itself a difference quotient, so its derivative needs a
    // wider step than the solver default.
    const auto curvature = [&](double x) {
        const double h = 1e-3 * std::max(1.0, x);
        return (slope(x + h) - slope(x - h)) / (2.0 * h);
    };

    math::RootSolveSettings settings;
    settings.abs_tol = 1e-10;
    settings.bracket_lo = 1.0;
    settings.bracket_hi = n_t;
    try {
        const auto root = math::solve_monotone_root(slope, settings, curvature);
        r.x_star = root.x;
        r.iterations = root.iterations;
    } catch (const NoSignChange&) {
        r.fallback = true;
    } catch (const NoConvergence&) {
        r.fallback = true;
    }
    if (r.fallback) {
        const auto peak = math::golden_section_maximize(objective, 1.0, n_t);
        r.x_star = peak.x;
        r.iterations = peak.iterations;
        r.boundary = r.x_star - 1.0 < 1e-6 || n_t - r.x_star < 1e-6;
    }
    settle_integer(r, n_t, objective);
    return r;
}

}  // namespace mimome
