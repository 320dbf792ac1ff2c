#pragma once

#include <cstdint>

namespace gaa {

// SplitMix64 finalizer. Bijective on uint64, good avalanche; used as the
// counter-mode hash behind all seed derivation.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic, collision-free seed for realization `index` under a master
// seed: for fixed master the map index -> seed is injective.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
}

// Map 64 random bits to a double in [0, 1), 53-bit resolution.
constexpr double uniform_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Random phase offset in [0, 2*pi) for one realization.
inline double phase_from_seed(std::uint64_t seed) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    return two_pi * uniform_unit(splitmix64(seed));
}

}  // namespace gaa
