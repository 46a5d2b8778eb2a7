#pragma once

#include <cstdint>

namespace cat0lab {

/// Stateless generator: the k-th draw of path p under seed s is a pure
/// function of (s, p, k), so paths can be sampled in any order on any thread.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t path) : key_(mix(mix(seed) ^ (path * 0xD1B54A32D192ED03ULL))) {}

    std::uint64_t bits(std::uint64_t counter) const { return mix(key_ ^ mix(counter + 0x9E3779B97F4A7C15ULL)); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform(std::uint64_t counter) const { return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53; }

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t key_;
};

}  // namespace cat0lab
