#pragma once

#include <cmath>
#include <cstdint>

// Deterministic, allocation-free random source for the Monte Carlo
// sampler.  Each matrix sample owns a splitmix64 substream derived from
// (seed, sample index), so results do not depend on thread scheduling.
namespace mp3 {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t s) : state(s) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in (0, 1]; the open lower end keeps log() finite below.
    double next_open() {
        return ((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }

    // Box-Muller pair, exactly two uniforms per call: the consumption
    // pattern is part of the reproducibility contract.
    void next_normal_pair(double& z0, double& z1) {
        double u1 = next_open();
        double u2 = next_unit();
        double rad = std::sqrt(-2.0 * std::log(u1));
        double ang = 6.28318530717958647692 * u2;
        z0 = rad * std::cos(ang);
        z1 = rad * std::sin(ang);
    }
};

// Substream seed for one sample: one extra mixing round keeps
// neighbouring sample indices statistically unrelated.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0xA3EC647659359ACDull * (index + 1)));
    return mix.next_u64();
}

}  // namespace mp3
