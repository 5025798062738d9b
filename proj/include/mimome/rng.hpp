// SPDX-License-Identifier: Apache-2.0
//
// Keyed random streams. A stream is a pure function of (seed, stream id):
// trial t of a run always draws from RngStream(seed, t), whichever worker
// thread executes it.
#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace mimome {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256** keyed by (seed, stream id), with Box-Muller normals.
///
/// Not thread safe; give each thread its own stream.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    /// Uniform on the open interval (0, 1).
    double uniform();

    /// Standard normal.
    double normal();

    /// Circularly-symmetric complex Gaussian with unit total variance.
    std::complex<double> complex_normal();

private:
    std::array<std::uint64_t, 4> state_{};
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace mimome
