#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace zpfbell {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
// A block is a pure function of (key, counter) with no carried state, so
// any partitioning of the index space reproduces the same values.
namespace philox {

inline constexpr std::uint32_t kWeylA = 0x9E3779B9u;
inline constexpr std::uint32_t kWeylB = 0xBB67AE85u;
inline constexpr std::uint32_t kMulA = 0xD2511F53u;
inline constexpr std::uint32_t kMulB = 0xCD9E8D57u;

inline void round_once(std::array<std::uint32_t, 4>& ctr, const std::array<std::uint32_t, 2>& key) {
    const std::uint64_t prod_a = std::uint64_t{kMulA} * ctr[0];
    const std::uint64_t prod_b = std::uint64_t{kMulB} * ctr[2];
    const auto lo_a = static_cast<std::uint32_t>(prod_a);
    const auto hi_a = static_cast<std::uint32_t>(prod_a >> 32);
    const auto lo_b = static_cast<std::uint32_t>(prod_b);
    const auto hi_b = static_cast<std::uint32_t>(prod_b >> 32);
    ctr = {hi_b ^ ctr[1] ^ key[0], lo_b, hi_a ^ ctr[3] ^ key[1], lo_a};
}

inline std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                          std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            key[0] += kWeylA;
            key[1] += kWeylB;
        }
        round_once(counter, key);
    }
    return counter;
}

}  // namespace philox

// Uniform double in (0, 1] from the top 53 bits; never 0, so it is safe
// under a logarithm.
inline double uniform_open_closed(std::uint64_t bits) {
    return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

// Two independent standard normals for a given (seed, sample, mode) cell,
// via one Philox block and a Box-Muller transform.
inline std::array<double, 2> normal_pair(std::uint64_t seed, std::uint64_t sample_index,
                                         std::uint32_t mode_index) {
    const std::array<std::uint32_t, 4> counter = {
        static_cast<std::uint32_t>(sample_index),
        static_cast<std::uint32_t>(sample_index >> 32),
        mode_index,
        0u,
    };
    const std::array<std::uint32_t, 2> key = {
        static_cast<std::uint32_t>(seed),
        static_cast<std::uint32_t>(seed >> 32),
    };
    const auto out = philox::block(counter, key);
    const std::uint64_t w0 = out[0] | (std::uint64_t{out[1]} << 32);
    const std::uint64_t w1 = out[2] | (std::uint64_t{out[3]} << 32);
    const double u1 = uniform_open_closed(w0);
    const double u2 = uniform_open_closed(w1);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace zpfbell
