// Seedable RNG used for every stochastic draw. Doubles come from the raw
// 64-bit stream so results are identical across platforms and standard
// libraries.

#pragma once

#include <cstdint>
#include <random>

namespace moevcs {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform integer in [0, n).
    int next_below(int n) {
        return static_cast<int>(next_double() * static_cast<double>(n));
    }

    // Independent child stream (for scenario builds vs. evolution).
    Rng split(std::uint64_t stream) {
        return Rng(next_u64() ^ (stream * 0x9e3779b97f4a7c15ULL));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace moevcs
