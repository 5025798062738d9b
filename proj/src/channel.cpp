// SPDX-License-Identifier: Apache-2.0
#include "mimome/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mimome/errors.hpp"
#include "mimome/mathkit.hpp"

namespace mimome {

void SystemConfig::validate() const
{
    if (n_t < 1 || n_r < 1 || n_e < 1)
        throw DomainError("antenna counts must be >= 1");
    if (l_t < 1 || l_t > n_t)
        throw DomainError("l_t must satisfy 1 <= l_t <= n_t (l_t=" + std::to_string(l_t) +
                          ", n_t=" + std::to_string(n_t) + ")");
    if (!std::isfinite(rho_m) || !(rho_m > 0.0))
        throw DomainError("rho_m must be finite and positive");
    if (!std::isfinite(rho_e) || !(rho_e > 0.0))
        throw DomainError("rho_e must be finite and positive");
}

ComplexMatrix sample_channel(int rows, int cols, RngStream& stream)
{
    if (rows < 1 || cols < 1)
        throw DomainError("sample_channel: dimensions must be >= 1");
    ComplexMatrix h(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            h(i, j) = stream.complex_normal();
    return h;
}

std::vector<double> column_norms2(const ComplexMatrix& h)
{
    std::vector<double> norms(static_cast<std::size_t>(h.cols()));
    for (Eigen::Index j = 0; j < h.cols(); ++j)
        norms[static_cast<std::size_t>(j)] = h.col(j).squaredNorm();
    return norms;
}

SelectionSet order_and_select(const ComplexMatrix& h_m, int l_t)
{
    const int n = static_cast<int>(h_m.cols());
    if (l_t < 1 || l_t > n)
        throw DomainError("order_and_select: l_t must be in [1, cols]");

    const auto norms = column_norms2(h_m);
    SelectionSet sel;
    sel.ordered.resize(static_cast<std::size_t>(n));
    std::iota(sel.ordered.begin(), sel.ordered.end(), 0);
    std::stable_sort(sel.ordered.begin(), sel.ordered.end(), [&](int a, int b) {
        return norms[static_cast<std::size_t>(a)] > norms[static_cast<std::size_t>(b)];
    });
    sel.selected.assign(sel.ordered.begin(), sel.ordered.begin() + l_t);
    return sel;
}

ComplexMatrix effective_channel(const ComplexMatrix& h, const SelectionSet& sel)
{
    ComplexMatrix out(h.rows(), static_cast<Eigen::Index>(sel.selected.size()));
    for (std::size_t k = 0; k < sel.selected.size(); ++k) {
        const int col = sel.selected[k];
        if (col < 0 || col >= h.cols())
            throw IndexOutOfRange("effective_channel: column " + std::to_string(col) +
                                  " outside a matrix with " + std::to_string(h.cols()) +
                                  " columns");
        out.col(static_cast<Eigen::Index>(k)) = h.col(col);
    }
    return out;
}

double logdet_rate(const ComplexMatrix& h_eff, double rho)
{
    if (!(rho > 0.0))
        throw DomainError("logdet_rate: rho must be positive");

    ComplexMatrix gram;
    if (h_eff.rows() <= h_eff.cols())
        gram = h_eff * h_eff.adjoint();
    else
        gram = h_eff.adjoint() * h_eff;

    ComplexMatrix m = ComplexMatrix::Identity(gram.rows(), gram.cols()) + rho * gram;
    Eigen::LLT<ComplexMatrix> llt(m);
    if (llt.info() != Eigen::Success)
        throw NumericalFailure("logdet_rate: Cholesky factorization failed");

    double log_det = 0.0;
    const auto& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
        const double pivot = l(i, i).real();
        if (!(pivot > 0.0) || !std::isfinite(pivot))
            throw NumericalFailure("logdet_rate: non-positive pivot");
        log_det += std::log(pivot);
    }
    return 2.0 * log_det * math::kLog2E;
}

SecrecySample secrecy_from_channels(const SystemConfig& cfg, const ComplexMatrix& h_m,
                                    const ComplexMatrix& h_e)
{
    if (h_m.cols() != cfg.n_t || h_e.cols() != cfg.n_t)
        throw DomainError("secrecy_from_channels: channels must have n_t columns");
    const SelectionSet sel = order_and_select(h_m, cfg.l_t);

    SecrecySample s;
    s.r_m = logdet_rate(effective_channel(h_m, sel), cfg.rho_m);
    s.r_e = logdet_rate(effective_channel(h_e, sel), cfg.rho_e);
    s.r_s = std::max(0.0, s.r_m - s.r_e);
    return s;
}

SecrecySample secrecy_sample(const SystemConfig& cfg, RngStream& stream,
                             EavesdropperChannel eve)
{
    cfg.validate();
    const ComplexMatrix h_m = sample_channel(cfg.n_r, cfg.n_t, stream);
    if (eve == EavesdropperChannel::mirror_main) {
        if (cfg.n_e != cfg.n_r)
            throw DomainError("mirrored eavesdropper channel needs n_e == n_r");
        return secrecy_from_channels(cfg, h_m, h_m);
    }
    const ComplexMatrix h_e = sample_channel(cfg.n_e, cfg.n_t, stream);
    return secrecy_from_channels(cfg, h_m, h_e);
}

}  // namespace mimome
