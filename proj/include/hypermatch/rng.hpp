#pragma once

#include <cstdint>

namespace hypermatch {

/// Master seed for any randomized operation. Same seed + same parameters
/// gives bit-identical output on every platform.
struct Seed {
    std::uint64_t master = 0;
};

/// splitmix64 finalizer (the mixing function alone, as a pure function).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// splitmix64 stream generator. Chosen for the reproducibility contract:
/// the algorithm is fixed, platform-independent and trivially splittable.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    explicit SplitMix64(Seed seed) : state_(seed.master) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Stateless per-trial stream derivation:
///   s0 = mix64(master), s1 = mix64(s0 ^ n), s2 = mix64(s1 ^ M), seed = mix64(s2 ^ trial).
/// Part of the CSV reproducibility contract; do not change without bumping
/// the RNG family string.
inline std::uint64_t derive_trial_seed(Seed master, std::uint64_t n, std::uint64_t m,
                                       std::uint64_t trial) {
    std::uint64_t s = mix64(master.master);
    s = mix64(s ^ n);
    s = mix64(s ^ m);
    s = mix64(s ^ trial);
    return s;
}

} // namespace hypermatch
