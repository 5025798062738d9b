// SPDX-License-Identifier: Apache-2.0
//
// Large-system Gaussian approximation of the secrecy rate under norm-based
// antenna selection, and the ergodic / outage measures derived from it.
//
// As n_t grows, R* = R_m - R_e is approximately N(eta, sigma^2) and the
// secrecy rate is its positive part. The main channel enters through the
// selection gain: the sum of the l_t largest of n_t Gamma(n_r, 1) column
// norms, itself asymptotically Gaussian with mean eta_t and variance
// sigma_t2, parameterized by the tail threshold u where a fraction
// l_t / n_t of the norm mass lies above u. The eavesdropper sees a random
// subset of its channel, so its moments only depend on min/max(l_t, n_e).
//
// All rates are in bits; natural-log variances are converted with log2(e)^2.
#pragma once

#include "mimome/channel.hpp"

namespace mimome {

struct AsymptoticMoments {
    double u = 0.0;         ///< chi-square tail threshold
    double eta_t = 0.0;     ///< mean selection gain
    double sigma_t2 = 0.0;  ///< variance of the selection gain
    double xi_t = 0.0;      ///< second-moment correction term of sigma_t2
    double eta_e = 0.0;     ///< eavesdropper rate mean [bits]
    double sigma_e2 = 0.0;  ///< eavesdropper rate variance [bits^2]
    double eta = 0.0;       ///< secrecy mean [bits]
    double sigma2 = 0.0;    ///< secrecy variance [bits^2]
    int l_m = 0;            ///< min(l_t, n_r)
    int m_m = 0;            ///< max(l_t, n_r)
    int l_e = 0;            ///< min(l_t, n_e)
    int m_e = 0;            ///< max(l_t, n_e)
    /// Set when n_e == l_t, where neither eavesdropper variance branch
    /// applies; the n_e > l_t branch is used.
    bool out_of_regime = false;

    [[nodiscard]] double sigma() const;
};

struct SelectionMoments {
    double eta_t = 0.0;
    double sigma_t2 = 0.0;
    double xi_t = 0.0;
};

struct EavesdropperMoments {
    double eta_e = 0.0;
    double sigma_e2 = 0.0;
    bool out_of_regime = false;
};

/// u >= 0 with upper_tail(u, n_r) = l_t / n_t.
double solve_threshold_u(const SystemConfig& cfg);

/// Selection-gain moments for a given threshold u.
/// Throws NegativeVariance if sigma_t2 < -1e-9; values in [-1e-9, 0) clamp to 0.
SelectionMoments selection_moments(const SystemConfig& cfg, double u);
SelectionMoments selection_moments(const SystemConfig& cfg);

EavesdropperMoments eavesdropper_moments(const SystemConfig& cfg);

AsymptoticMoments secrecy_moments(const SystemConfig& cfg);

/// E[max(0, X)] for X ~ N(eta, sigma^2); max(0, eta) when sigma is zero.
double ergodic_approx(double eta, double sigma2);
double ergodic_approx(const AsymptoticMoments& m);

/// P(max(0, X) <= r_out) = 1 - Q((r_out - eta) / sigma). With zero variance
/// the step function 1{r_out > eta} is returned.
double outage_approx(const AsymptoticMoments& m, double r_out);

}  // namespace mimome
