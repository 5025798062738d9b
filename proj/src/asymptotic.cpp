// SPDX-License-Identifier: Apache-2.0
#include "mimome/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mimome/errors.hpp"
#include "mimome/mathkit.hpp"

namespace mimome {

using math::chi_square_pdf;
using math::kLog2E;

double AsymptoticMoments::sigma() const
{
    return std::sqrt(sigma2);
}

double solve_threshold_u(const SystemConfig& cfg)
{
    cfg.validate();
    if (cfg.l_t == cfg.n_t)
        return 0.0;

    const double target = static_cast<double>(cfg.l_t) / cfg.n_t;
    const int n = cfg.n_r;
    double hi = n + 10.0;
    while (math::upper_tail(hi, n) > target)
        hi *= 2.0;

    math::RootSolveSettings settings;
    settings.bracket_lo = 0.0;
    settings.bracket_hi = hi;
    const auto tail = [&](double u) { return math::upper_tail(u, n) - target; };
    const auto slope = [&](double u) { return -chi_square_pdf(u, n); };
    // The moments amplify errors in u by roughly n_t, so aim for a residual
    // near rounding level; fall back to the standard tolerance if rounding
    // in the tail sum does not allow it.
    math::RootSolveSettings tight = settings;
    tight.abs_tol = std::max(1e-17, 1e-14 * target);
    try {
        return math::solve_monotone_root(tail, tight, slope).x;
    } catch (const NoConvergence&) {
        return math::solve_monotone_root(tail, settings, slope).x;
    }
}

SelectionMoments selection_moments(const SystemConfig& cfg, double u)
{
    const double nr = cfg.n_r;
    const double nt = cfg.n_t;
    const double lt = cfg.l_t;
    const double f1 = chi_square_pdf(u, cfg.n_r + 1);
    const double f2 = chi_square_pdf(u, cfg.n_r + 2);

    SelectionMoments s;
    s.eta_t = nr * (lt + nt * f1);
    s.xi_t = nr * (nr + 1.0) * (lt + nt * f1 + nt * f2);
    const double spread = lt * u - s.eta_t;
    s.sigma_t2 = spread * spread * (1.0 / lt - 1.0 / nt) - s.eta_t * s.eta_t / lt + s.xi_t;
    if (s.sigma_t2 < -1e-9)
        throw NegativeVariance("selection gain variance " + std::to_string(s.sigma_t2) +
                               " is negative");
    s.sigma_t2 = std::max(0.0, s.sigma_t2);
    return s;
}

SelectionMoments selection_moments(const SystemConfig& cfg)
{
    return selection_moments(cfg, solve_threshold_u(cfg));
}

EavesdropperMoments eavesdropper_moments(const SystemConfig& cfg)
{
    cfg.validate();
    const double l_e = std::min(cfg.l_t, cfg.n_e);
    const double m_e = std::max(cfg.l_t, cfg.n_e);
    const double rho = cfg.rho_e;

    EavesdropperMoments e;
    e.eta_e = l_e * std::log2(1.0 + rho * m_e);
    double var_nats = 0.0;
    if (cfg.n_e < cfg.l_t) {
        const double denom = 1.0 + rho * m_e;
        var_nats = l_e * m_e * rho * rho / (denom * denom);
    } else {
        var_nats = l_e / m_e;
        e.out_of_regime = cfg.n_e == cfg.l_t;
    }
    e.sigma_e2 = var_nats * kLog2E * kLog2E;
    return e;
}

AsymptoticMoments secrecy_moments(const SystemConfig& cfg)
{
    cfg.validate();
    AsymptoticMoments m;
    m.u = solve_threshold_u(cfg);
    const SelectionMoments sel = selection_moments(cfg, m.u);
    m.eta_t = sel.eta_t;
    m.sigma_t2 = sel.sigma_t2;
    m.xi_t = sel.xi_t;

    const EavesdropperMoments eve = eavesdropper_moments(cfg);
    m.eta_e = eve.eta_e;
    m.sigma_e2 = eve.sigma_e2;
    m.out_of_regime = eve.out_of_regime;

    m.l_m = std::min(cfg.l_t, cfg.n_r);
    m.m_m = std::max(cfg.l_t, cfg.n_r);
    m.l_e = std::min(cfg.l_t, cfg.n_e);
    m.m_e = std::max(cfg.l_t, cfg.n_e);

    const double lm = m.l_m;
    const double mm = m.m_m;
    const double rho = cfg.rho_m;
    const double gain = rho * m.eta_t;
    const double load = lm + gain;

    // Main-channel mean with its second-order (trace of J^2) correction.
    const double main_mean = lm * std::log2(1.0 + gain / lm) -
                             lm * (lm - 1.0) * gain * gain / (2.0 * mm * load * load) * kLog2E;
    m.eta = main_mean - m.eta_e;

    // Sensitivity of the main rate to the selection gain (in nats per unit).
    const double sensitivity =
        lm * rho / load - lm * lm * (lm - 1.0) * rho * gain / (mm * load * load * load);
    m.sigma2 = sensitivity * sensitivity * m.sigma_t2 * kLog2E * kLog2E + m.sigma_e2;
    return m;
}

double ergodic_approx(double eta, double sigma2)
{
    if (!(sigma2 >= 0.0))
        throw DomainError("ergodic_approx: negative variance");
    const double sigma = std::sqrt(sigma2);
    if (sigma == 0.0)
        return std::max(0.0, eta);
    const double xi = eta / sigma;
    return sigma * math::std_normal_pdf(xi) + eta * math::q_function(-xi);
}

double ergodic_approx(const AsymptoticMoments& m)
{
    return ergodic_approx(m.eta, m.sigma2);
}

double outage_approx(const AsymptoticMoments& m, double r_out)
{
    if (!(r_out >= 0.0))
        throw DomainError("outage_approx: r_out must be non-negative");
    if (!(m.sigma2 >= 0.0))
        throw DomainError("outage_approx: negative variance");
    if (m.sigma2 == 0.0)
        return r_out > m.eta ? 1.0 : 0.0;
    return 1.0 - math::q_function((r_out - m.eta) / m.sigma());
}

}  // namespace mimome
