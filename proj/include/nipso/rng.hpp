#ifndef NIPSO_RNG_HPP
#define NIPSO_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace nipso {

/// Splittable pseudo-random stream (xoshiro256++ seeded through splitmix64).
///
/// Every sampler in a model owns its own stream, derived from a master seed
/// plus a key tuple, so draws from distinct components are independent and a
/// run is reproducible from (seed, keys) alone regardless of scheduling.
class Rng {
public:
    explicit Rng(std::uint64_t seed) { seed_state(seed); }

    /// Derive an independent stream from a master seed and up to three keys
    /// (e.g. run index, component index).
    static Rng stream(std::uint64_t seed, std::uint64_t k1 = 0,
                      std::uint64_t k2 = 0, std::uint64_t k3 = 0) {
        std::uint64_t h = mix64(seed);
        h = mix64(h ^ mix64(k1 + 0x9e3779b97f4a7c15ULL));
        h = mix64(h ^ mix64(k2 + 0xbf58476d1ce4e5b9ULL));
        h = mix64(h ^ mix64(k3 + 0x94d049bb133111ebULL));
        return Rng(h);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller (platform-independent, no libm distribution).
    double gaussian() {
        const double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586476925286766559 * u2);
    }

    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

    // UniformRandomBitGenerator interface
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return next(); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    // splitmix64 finalizer
    static std::uint64_t mix64(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    void seed_state(std::uint64_t seed) {
        std::uint64_t z = seed;
        for (auto& word : s_) {
            z += 0x9e3779b97f4a7c15ULL;
            std::uint64_t w = z;
            w = (w ^ (w >> 30)) * 0xbf58476d1ce4e5b9ULL;
            w = (w ^ (w >> 27)) * 0x94d049bb133111ebULL;
            word = w ^ (w >> 31);
        }
        // xoshiro must not start from the all-zero state
        if (s_[0] == 0 && s_[1] == 0 && s_[2] == 0 && s_[3] == 0) s_[0] = 1;
    }

    std::array<std::uint64_t, 4> s_{};
};

}  // namespace nipso

#endif  // NIPSO_RNG_HPP
