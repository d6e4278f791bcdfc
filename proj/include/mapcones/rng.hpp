#pragma once

#include <cmath>
#include <cstdint>

#include "mapcones/cmatrix.hpp"

namespace mapcones {

// SplitMix64 finalizer. Fixed, documented mixing so identical seeds yield
// bit-identical streams on every platform.
inline uint64_t splitmix64_mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Reproducible RNG seed. Child seeds are derived by the splitting rule
///   child(i) = mix(seed XOR mix(GOLDEN * (i + 1)))
/// with GOLDEN = 0x9E3779B97F4A7C15 and mix = the SplitMix64 finalizer.
/// All CLI subcommand randomness derives from one root seed this way.
struct Seed {
    uint64_t value = 42;

    Seed child(uint64_t index) const {
        const uint64_t golden = 0x9E3779B97F4A7C15ull;
        return Seed{splitmix64_mix(value ^ splitmix64_mix(golden * (index + 1)))};
    }
};

/// SplitMix64 stream generator (counter-based state walk).
class Rng {
public:
    explicit Rng(Seed seed) : state_(seed.value) {}
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return splitmix64_mix(state_);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard real gaussian via Box-Muller (two uniforms per call).
    double gauss() {
        double u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(6.283185307179586476925 * u2);
    }

    /// Standard complex gaussian, E|z|^2 = 1.
    cplx cgauss() {
        double re = gauss();
        double im = gauss();
        return cplx(re * 0.7071067811865475244, im * 0.7071067811865475244);
    }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
    }

private:
    uint64_t state_;
};

} // namespace mapcones
