#include <doctest.h>

#include <array>

#include "skyrelay/rng.hpp"

using skyrelay::Rng;

TEST_CASE("rng streams are reproducible per seed")
{
    Rng a(99), b(99), c(100);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform01();
        CHECK(x == b.uniform01());
        differs = differs || x != c.uniform01();
    }
    CHECK(differs);
}

TEST_CASE("uniform01 stays in [0, 1) and uniform respects its interval")
{
    Rng rng(3);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        const double v = rng.uniform(-2.0, 5.0);
        REQUIRE(v >= -2.0);
        REQUIRE(v < 5.0);
    }
}

TEST_CASE("randint covers both ends uniformly")
{
    Rng rng(11);
    std::array<int, 5> hist{};
    const int draws = 50000;
    for (int i = 0; i < draws; ++i) {
        const int v = rng.randint(4, 8);
        REQUIRE(v >= 4);
        REQUIRE(v <= 8);
        ++hist[static_cast<std::size_t>(v - 4)];
    }
    for (int h : hist) CHECK(std::abs(h / double(draws) - 0.2) < 0.01);
    CHECK(rng.randint(7, 7) == 7);
}

TEST_CASE("bernoulli frequency matches p")
{
    Rng rng(5);
    int hits = 0;
    for (int i = 0; i < 100000; ++i) hits += rng.bernoulli(0.3) ? 1 : 0;
    CHECK(std::abs(hits / 1e5 - 0.3) < 0.01);
}
