#pragma once

#include <cstdint>
#include <random>

namespace skyrelay {

// Seeded generator with distribution formulas spelled out here, so a given
// seed produces the same stream on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1).
    double uniform01();
    // Uniform in [lo, hi).
    double uniform(double lo, double hi);
    // Uniform integer in [lo, hi], both inclusive.
    int randint(int lo, int hi);
    bool bernoulli(double p) { return uniform01() < p; }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace skyrelay
