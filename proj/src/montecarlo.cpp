// SPDX-License-Identifier: Apache-2.0
#include "mimome/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "mimome/errors.hpp"

namespace mimome {

void TrialPlan::validate() const
{
    if (n_trials < 1)
        throw DomainError("n_trials must be >= 1");
    if (r_out && !(*r_out >= 0.0))
        throw DomainError("r_out must be non-negative");
}

namespace {

// Trials are evaluated block by block so memory stays bounded for long runs.
constexpr std::int64_t kBlockSize = 1 << 15;

// Welford accumulator, fed in trial order.
struct Running {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x)
    {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    [[nodiscard]] double sample_std() const
    {
        return n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1)) : 0.0;
    }

    [[nodiscard]] Estimate estimate() const
    {
        Estimate e;
        e.mean = mean;
        e.n_trials = n;
        e.std_error = sample_std() / std::sqrt(static_cast<double>(n));
        e.ci95_halfwidth = 1.96 * e.std_error;
        return e;
    }
};

unsigned resolve_workers(unsigned requested, std::int64_t trials)
{
    unsigned workers = requested;
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::int64_t>(workers, trials));
}

void fill_block(const SystemConfig& cfg, std::uint64_t seed, std::int64_t first,
                std::span<SecrecySample> slots, const RunOptions& options)
{
    const unsigned workers = resolve_workers(options.workers, static_cast<std::int64_t>(slots.size()));
    std::atomic<std::size_t> next{0};
    constexpr std::size_t kChunk = 64;
    std::mutex error_mutex;
    std::exception_ptr error;

    const auto work = [&] {
        try {
            for (;;) {
                const std::size_t begin = next.fetch_add(kChunk);
                if (begin >= slots.size())
                    return;
                const std::size_t end = std::min(slots.size(), begin + kChunk);
                for (std::size_t i = begin; i < end; ++i) {
                    RngStream stream(seed, static_cast<std::uint64_t>(first) + i);
                    slots[i] = secrecy_sample(cfg, stream, options.eve);
                }
            }
        } catch (...) {
            next = slots.size();
            const std::lock_guard lock(error_mutex);
            if (!error)
                error = std::current_exception();
        }
    };

    if (workers > 1) {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (unsigned w = 1; w < workers; ++w)
            pool.emplace_back(work);
        work();
    } else {
        work();
    }
    if (error)
        std::rethrow_exception(error);
}

template <class Visitor>
void for_each_trial(const SystemConfig& cfg, const TrialPlan& plan, const RunOptions& options,
                    Visitor&& visit)
{
    cfg.validate();
    plan.validate();
    std::vector<SecrecySample> block;
    for (std::int64_t first = 0; first < plan.n_trials; first += kBlockSize) {
        const std::int64_t count = std::min(kBlockSize, plan.n_trials - first);
        block.assign(static_cast<std::size_t>(count), SecrecySample{});
        fill_block(cfg, plan.seed, first, block, options);
        for (const auto& s : block)
            visit(s);
    }
}

}  // namespace

SimulationSummary simulate(const SystemConfig& cfg, const TrialPlan& plan,
                           const RunOptions& options)
{
    Running rate;
    Running rstar;
    std::int64_t outages = 0;
    for_each_trial(cfg, plan, options, [&](const SecrecySample& s) {
        rate.push(s.r_s);
        rstar.push(s.r_star());
        if (plan.r_out && s.r_s < *plan.r_out)
            ++outages;
    });

    SimulationSummary out;
    out.ergodic = rate.estimate();
    out.rstar = {rstar.mean, rstar.sample_std()};
    if (plan.r_out) {
        Estimate e;
        e.n_trials = plan.n_trials;
        e.mean = static_cast<double>(outages) / static_cast<double>(plan.n_trials);
        e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(plan.n_trials));
        e.ci95_halfwidth = 1.96 * e.std_error;
        out.outage = e;
    }
    return out;
}

Estimate estimate_ergodic(const SystemConfig& cfg, const TrialPlan& plan,
                          const RunOptions& options)
{
    return simulate(cfg, plan, options).ergodic;
}

Estimate estimate_outage(const SystemConfig& cfg, const TrialPlan& plan,
                         const RunOptions& options)
{
    if (!plan.r_out)
        throw MissingThreshold("estimate_outage: plan has no r_out");
    return *simulate(cfg, plan, options).outage;
}

RstarMoments empirical_rstar_moments(const SystemConfig& cfg, const TrialPlan& plan,
                                     const RunOptions& options)
{
    return simulate(cfg, plan, options).rstar;
}

std::vector<double> sample_rstar(const SystemConfig& cfg, const TrialPlan& plan,
                                 const RunOptions& options)
{
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(plan.n_trials));
    for_each_trial(cfg, plan, options, [&](const SecrecySample& s) { out.push_back(s.r_star()); });
    return out;
}

NormalityTest jarque_bera(std::span<const double> sample)
{
    if (sample.size() < 3)
        throw DomainError("jarque_bera: need at least 3 observations");
    const double n = static_cast<double>(sample.size());
    double mean = 0.0;
    for (double x : sample)
        mean += x;
    mean /= n;

    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double x : sample) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;

    NormalityTest t;
    if (m2 == 0.0)
        return t;
    t.skewness = m3 / std::pow(m2, 1.5);
    t.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    t.statistic = n / 6.0 * (t.skewness * t.skewness + 0.25 * t.excess_kurtosis * t.excess_kurtosis);
    t.p_value = std::exp(-0.5 * t.statistic);
    return t;
}

}  // namespace mimome
