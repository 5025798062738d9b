// SPDX-License-Identifier: Apache-2.0
#include "mimome/rng.hpp"

#include <cmath>
#include <numbers>

namespace mimome {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k)
{
    return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
{
    // Expand the (seed, stream id) key with SplitMix64 increments.
    std::uint64_t key = mix64(mix64(seed) + stream_id);
    for (auto& word : state_) {
        key += 0x9e3779b97f4a7c15ULL;
        word = mix64(key);
    }
}

std::uint64_t RngStream::next_u64()
{
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform()
{
    // 53 random bits, shifted by half an ulp so 0 is never returned.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal()
{
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    cached_normal_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

std::complex<double> RngStream::complex_normal()
{
    constexpr double scale = 1.0 / std::numbers::sqrt2;
    const double re = normal();
    const double im = normal();
    return {re * scale, im * scale};
}

}  // namespace mimome
