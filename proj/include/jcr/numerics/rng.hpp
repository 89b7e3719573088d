#pragma once
/// @file rng.hpp
/// @brief SplitMix64: a counter-based generator with a fixed, platform-independent stream.

#include <cmath>
#include <cstdint>

namespace jcr {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : counter_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (counter_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on (0, 1), never exactly 0.
    double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t counter_;
};

}  // namespace jcr
