#pragma once

#include <cstdint>
#include <random>

namespace mogar {

// Deterministic random source. All randomized operations draw from one of
// these so that a run is a pure function of its seed. The integer and unit
// helpers avoid std::*_distribution, whose output is implementation-defined;
// this keeps archives bit-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform integer in [0, n). n must be > 0.
    std::size_t below(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 gen_;
};

} // namespace mogar
