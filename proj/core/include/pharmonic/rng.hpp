#pragma once

#include <cstdint>

namespace pharmonic {

/// Deterministic splitmix64 generator. Identical streams for identical seeds
/// on every platform, unlike the standard-library distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return n ? next_u64() % n : 0; }

    /// Independent stream for trial `index`; order of trial execution does not
    /// affect the numbers a trial sees.
    static Rng for_trial(std::uint64_t seed, std::uint64_t index) {
        Rng mix(seed ^ (0x517cc1b727220a95ULL * (index + 1)));
        return Rng(mix.next_u64());
    }

private:
    std::uint64_t state_;
};

} // namespace pharmonic
