#ifndef PATHENS_RNG_HPP
#define PATHENS_RNG_HPP

#include <cstdint>

namespace pathens {

/// SplitMix64 generator (Steele, Lea, Flood 2014). Hand-rolled so that
/// streams are bit-identical across platforms and standard-library versions.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1]; never returns zero.
    double uniform_pos01() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    /// Unbiased uniform integer in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::uint64_t state_;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
} // namespace detail

/// Independent stream for (seed, index). Replica i of a seeded run always
/// draws from substream(seed, i), so results do not depend on the order in
/// which replicas execute.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t gamma = 0x9E3779B97F4A7C15ull;
    return SplitMix64(detail::mix64(detail::mix64(seed) + gamma * (index + 1)));
}

} // namespace pathens

#endif
