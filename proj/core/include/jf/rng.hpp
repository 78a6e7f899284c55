#ifndef JF_RNG_HPP
#define JF_RNG_HPP

#include <cstdint>

#include "jf/types.hpp"

namespace jf {

/// SplitMix64 (Steele, Lea, Flood 2014): a fixed, platform-independent
/// generator, so seeded runs replay bit-identically everywhere. Doubles are
/// taken from the top 53 bits.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Uniform integer in [lo, hi] (small ranges only).
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// Uniform in the complex disk |z| <= r.
    cplx disk(double r) {
        const double rad = r * std::sqrt(next_double());
        const double ang = 2.0 * 3.141592653589793 * next_double();
        return {rad * std::cos(ang), rad * std::sin(ang)};
    }

private:
    std::uint64_t state_;
};

}  // namespace jf

#endif
