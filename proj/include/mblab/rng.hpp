// rng.hpp — splitmix64 generator. Standard-library distributions are
// implementation-defined, so all draws go through these helpers to keep
// seeded runs byte-identical across platforms.

#pragma once

#include <cmath>
#include <cstdint>

namespace mblab {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // magnitude log-uniform in [lo, hi]
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    double sign() { return (next_u64() & 1ull) ? 1.0 : -1.0; }

    // signed value with log-uniform magnitude
    double signed_log_uniform(double lo, double hi) { return sign() * log_uniform(lo, hi); }

  private:
    std::uint64_t state_;
};

}  // namespace mblab
