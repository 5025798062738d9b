// SPDX-License-Identifier: Apache-2.0
//
// Finite-dimensional wiretap model: Rayleigh channel draws, norm-based
// transmit antenna selection and the instantaneous rates it yields.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mimome/rng.hpp"

namespace mimome {

/// Scenario parameters. SNRs are linear power ratios.
struct SystemConfig {
    int n_t = 1;   ///< transmit antennas
    int n_r = 1;   ///< legitimate receive antennas
    int n_e = 1;   ///< eavesdropper antennas
    int l_t = 1;   ///< selected transmit antennas
    double rho_m = 1.0;  ///< main-channel SNR per receive antenna
    double rho_e = 1.0;  ///< eavesdropper SNR per receive antenna

    /// Throws DomainError unless 1 <= l_t <= n_t, all counts >= 1 and both
    /// SNRs are finite and positive.
    void validate() const;

    [[nodiscard]] SystemConfig with_l_t(int l) const
    {
        SystemConfig copy = *this;
        copy.l_t = l;
        return copy;
    }
};

using ComplexMatrix = Eigen::MatrixXcd;

/// Column indices (0-based) ordered by non-increasing squared norm, and the
/// leading l_t of them. The power allocation is implicit: unit power on
/// every selected column, zero elsewhere.
struct SelectionSet {
    std::vector<int> ordered;
    std::vector<int> selected;
};

/// Rates in bits per channel use. r_s is the positive part of r_m - r_e.
struct SecrecySample {
    double r_m = 0.0;
    double r_e = 0.0;
    double r_s = 0.0;

    [[nodiscard]] double r_star() const { return r_m - r_e; }
};

/// How the eavesdropper channel is produced. `mirror_main` reuses H_m and
/// exists only to pin down degenerate cases in tests.
enum class EavesdropperChannel { independent, mirror_main };

/// rows x cols matrix of i.i.d. CN(0, 1) entries, filled column by column.
ComplexMatrix sample_channel(int rows, int cols, RngStream& stream);

/// Squared Euclidean norm of every column.
std::vector<double> column_norms2(const ComplexMatrix& h);

/// Norm ordering of the columns of h_m; ties go to the lower index.
SelectionSet order_and_select(const ComplexMatrix& h_m, int l_t);

/// Gathers the selected columns of h, in selection order.
/// Throws IndexOutOfRange for a selection index outside h.
ComplexMatrix effective_channel(const ComplexMatrix& h, const SelectionSet& sel);

/// log2 det(I + rho G) with G the Gram matrix on the smaller dimension of
/// h_eff, via Cholesky. Throws NumericalFailure on a non-positive pivot.
double logdet_rate(const ComplexMatrix& h_eff, double rho);

/// Rates for given channel realizations under the selection protocol.
SecrecySample secrecy_from_channels(const SystemConfig& cfg, const ComplexMatrix& h_m,
                                    const ComplexMatrix& h_e);

/// Draws H_m then H_e from `stream`, selects on H_m only and evaluates the
/// secrecy rate.
SecrecySample secrecy_sample(const SystemConfig& cfg, RngStream& stream,
                             EavesdropperChannel eve = EavesdropperChannel::independent);

}  // namespace mimome
