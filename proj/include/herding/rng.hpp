#pragma once
// Counter-based random numbers: every draw is a pure function of
// (seed, stream, counter), so results do not depend on evaluation order.

#include <cmath>
#include <cstdint>
#include <utility>

#include "herding/geometry.hpp"

namespace herding {

class CounterRng {
public:
    explicit constexpr CounterRng(std::uint64_t seed) : seed_(seed) {}

    [[nodiscard]] constexpr std::uint64_t seed() const { return seed_; }

    [[nodiscard]] constexpr std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const
    {
        std::uint64_t h = mix(seed_ ^ 0x6a09e667f3bcc909ULL);
        h = mix(h ^ stream);
        return mix(h ^ counter);
    }

    /// Uniform on the half-open interval (0, 1].
    [[nodiscard]] constexpr double uniform(std::uint64_t stream, std::uint64_t counter) const
    {
        return static_cast<double>((bits(stream, counter) >> 11) + 1) * 0x1.0p-53;
    }

    /// Pair of independent standard normals (Box-Muller), one per axis.
    [[nodiscard]] Point2 normal2(std::uint64_t stream, std::uint64_t counter) const
    {
        const double u1 = uniform(stream, 2 * counter);
        const double u2 = uniform(stream, 2 * counter + 1);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = kTwoPi * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

private:
    // splitmix64 finalizer
    static constexpr std::uint64_t mix(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
};

/// Stream identifiers used by the simulation.
namespace streams {
inline constexpr std::uint64_t kInitTargets = 1;
inline constexpr std::uint64_t kInitHerders = 2;
/// Target i noise uses stream kTargetNoiseBase + i, counter = step index.
inline constexpr std::uint64_t kTargetNoiseBase = 1'000;
}  // namespace streams

}  // namespace herding
