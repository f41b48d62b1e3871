#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace derlpso {

// All randomness in the project flows through these helpers instead of
// std::uniform_*_distribution, whose draw sequences differ between standard
// library implementations. Keeping the mapping from raw engine output to
// variates in-repo makes seeded runs reproducible across toolchains.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1), 53 random bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform_in(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Uniform index in [0, n). n must be >= 1.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    const auto idx = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
    return idx < n ? idx : n - 1;
}

/// Random sign, -1 or +1 with equal probability.
inline double uniform_sign(Rng& rng) {
    return uniform01(rng) < 0.5 ? -1.0 : 1.0;
}

/// Standard normal via Box-Muller. Consumes exactly two uniforms per call.
inline double normal(Rng& rng, double mean, double stddev) {
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    // Guard log(0): u1 == 0 happens with probability 2^-53.
    const double r = std::sqrt(-2.0 * std::log(u1 > 0.0 ? u1 : 0x1.0p-53));
    return mean + stddev * r * std::cos(2.0 * 3.14159265358979323846 * u2);
}

/// splitmix64 finalizer; used to derive decorrelated child seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace derlpso
