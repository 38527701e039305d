#pragma once

#include <cstdint>

namespace qkd {

// SplitMix64 (Steele/Lea/Flood). Used wherever the tools need reproducible
// pseudo-randomness; deliberately self-contained so that outputs are identical
// across platforms and standard-library versions.
struct SplitMix64 {
    std::uint64_t state;

    explicit constexpr SplitMix64(std::uint64_t seed) : state(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform-ish draw in [0, n); n must be positive.
    constexpr std::uint64_t bounded(std::uint64_t n) { return next() % n; }

    // Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace qkd
