#pragma once

#include <cstdint>

namespace sfs {

// SplitMix64. The k-th element of the stream seeded with `seed` is
// mix(seed + k * 0x9E3779B97F4A7C15). Counter-based access keeps the draw
// for level k independent of evaluation order, which the schedule
// memoization relies on. Pinned here so other implementations can match
// byte-for-byte.
inline uint64_t splitmix64_mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

inline uint64_t splitmix64_at(uint64_t seed, uint64_t k) {
    return splitmix64_mix(seed + k * 0x9E3779B97F4A7C15ULL);
}

/// Uniform double in [0,1) from the top 53 bits.
inline double uniform01_at(uint64_t seed, uint64_t k) {
    return static_cast<double>(splitmix64_at(seed, k) >> 11) * 0x1.0p-53;
}

/// Uniform double in [-b, b].
inline double uniform_pm_at(double b, uint64_t seed, uint64_t k) {
    return -b + 2.0 * b * uniform01_at(seed, k);
}

}  // namespace sfs
