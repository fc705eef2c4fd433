#pragma once

// Explicit, platform-independent random streams. Generators and cohort
// builders only draw from these, never from <random> distributions, whose
// output is implementation-defined.
//
//   splitmix64(x): x += 0x9E3779B97F4A7C15;
//                  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9;
//                  x = (x ^ (x >> 27)) * 0x94D049BB133111EB;
//                  return x ^ (x >> 31);
//   mix_seed(base, i) = splitmix64(base ^ splitmix64(i))
//   Rng(seed): xoshiro256** with its four state words taken from successive
//              splitmix64 outputs starting at `seed`.

#include <array>
#include <cstdint>

namespace manifoldnet {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derived per-task seed; i indexes networks, restarts, streams.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t i) noexcept {
    return splitmix64(base ^ splitmix64(i));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept;

    std::uint64_t next() noexcept;

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [low, high); exactly `low` when low == high.
    double uniform(double low, double high) noexcept {
        return low == high ? low : low + (high - low) * uniform();
    }

    /// Unbiased integer in [0, bound) by rejection; bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept;

private:
    std::array<std::uint64_t, 4> s_;
};

}  // namespace manifoldnet
