#pragma once

#include <cmath>
#include <cstdint>

#include "jc2a/errors.hpp"

namespace jc2a {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Substream derivation rule. Every random quantity in the project flows from
// one master seed through chained substream() calls, so any consumer (or an
// independent re-implementation) can reproduce a stream from (seed, salts).
constexpr std::uint64_t substream(std::uint64_t seed, std::uint64_t salt) {
    return mix64(seed + kGoldenGamma * (salt + 1));
}

constexpr std::uint64_t substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return substream(substream(seed, a), b);
}

// Deterministic, stdlib-independent generator (SplitMix64 sequence).
// next_normal() consumes exactly two raw draws per call, so stream positions
// are reproducible from the call sequence alone.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [lo, hi], both inclusive.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw ArgumentError("next_int: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    // Standard normal via Box-Muller (cosine branch only).
    double next_normal() {
        const double u1 = 1.0 - next_double();  // (0, 1]
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }

private:
    static constexpr double kTwoPi = 6.283185307179586476925286766559;
    std::uint64_t state_;
};

}  // namespace jc2a
