#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace qsm {

// Deterministic seedable random source. Every stochastic operation in the
// library takes one of these explicitly, so a recorded seed reproduces a run
// bit-for-bit. Bounded draws use rejection sampling and reals take the top
// 53 bits of the engine output, so results do not depend on the standard
// library's distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Independent stream for trial/worker `index` of a master seed.
    static Rng derive(std::uint64_t master, std::uint64_t index) {
        return Rng(splitmix64(master + 0x9E3779B97F4A7C15ull * (index + 1)));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
        const std::uint64_t threshold = (-bound) % bound; // 2^64 mod bound
        std::uint64_t v = next_u64();
        while (v < threshold) v = next_u64();
        return v % bound;
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

  private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
};

} // namespace qsm
