#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "skyrelay/encoding.hpp"
#include "skyrelay/operators.hpp"
#include "skyrelay/radio.hpp"

using namespace skyrelay;

namespace {

// Active-only solution with every UAV at the same distance and speed.
Solution evenSolution(const ScenarioConfig& cfg, int n)
{
    Solution s;
    s.n_active = n;
    for (int i = 0; i < n; ++i) {
        const double ang = 0.3 + 0.2 * i;
        s.x.push_back(150.0 * std::cos(ang));
        s.y.push_back(150.0 * std::sin(ang));
        s.z.push_back(250.0);
        s.p.push_back(0.5);
        s.v.push_back(10.0);
        s.uav_chan.push_back(i % cfg.u_channels);
    }
    for (int m = 0; m < cfg.relayedCount(); ++m) s.assign.push_back(m % n);
    for (int k = 0; k < cfg.directCount(); ++k) s.direct_chan.push_back(k % cfg.u_channels);
    return s;
}

} // namespace

TEST_CASE("dimension and bounds follow the padded block layout")
{
    const auto cfg = genScenario(Scale::one, 1);
    CHECK(continuousDimension(cfg) == 40);
    const auto b = continuousBounds(cfg);
    REQUIRE(b.lower.size() == 40);
    CHECK(b.lower[0] == 0.0);
    CHECK(b.upper[15] == 400.0);
    CHECK(b.lower[16] == 200.0);
    CHECK(b.upper[23] == 500.0);
    CHECK(b.lower[24] == 0.1);
    CHECK(b.upper[39] == 16.0);
}

TEST_CASE("gene flattening round trips")
{
    const auto cfg = genScenario(Scale::one, 1);
    Rng rng(3);
    auto s = randomSolution(cfg, rng);
    const auto g = continuousGenes(s);
    CHECK(g.size() == 40);
    Solution t = s;
    t.x.assign(8, 0.0);
    setContinuousGenes(t, g);
    CHECK(t == s);
    CHECK_THROWS_AS(setContinuousGenes(t, std::vector<double>(7, 0.0)), std::invalid_argument);
}

TEST_CASE("random solutions satisfy every hard constraint")
{
    const auto cfg = genScenario(Scale::one, 5);
    Rng rng(12);
    for (int i = 0; i < 1000; ++i) {
        const auto s = randomSolution(cfg, rng);
        REQUIRE(checkSolution(s, cfg).empty());
        CHECK(s.x.size() == 8);
        CHECK(s.uav_chan.size() == 8);
        // One-hot rows of the assignment matrix sum to one.
        for (int a : s.assign) {
            int ones = 0;
            for (int n = 0; n < s.n_active; ++n) ones += (a == n) ? 1 : 0;
            CHECK(ones == 1);
        }
        for (int n = 0; n < 8; ++n) {
            CHECK(s.x[static_cast<std::size_t>(n)] >= 0.0);
            CHECK(s.x[static_cast<std::size_t>(n)] <= 400.0);
            CHECK(s.z[static_cast<std::size_t>(n)] >= 200.0);
            CHECK(s.v[static_cast<std::size_t>(n)] <= 16.0);
        }
    }
    Rng a(77), b(77);
    CHECK(randomSolution(cfg, a) == randomSolution(cfg, b));
}

TEST_CASE("repair resamples only the offending slots")
{
    const auto cfg = genScenario(Scale::one, 5);
    Rng rng(1);
    auto s = randomSolution(cfg, rng);
    CHECK(repairContinuous(s, cfg, rng) == s);
    auto bad = s;
    bad.x[0] = cfg.l_max_m + 5.0;
    bad.v[3] = 1.0;
    const auto fixed = repairContinuous(bad, cfg, rng);
    CHECK(fixed.x[0] >= cfg.l_min_m);
    CHECK(fixed.x[0] <= cfg.l_max_m);
    CHECK(fixed.v[3] >= cfg.v_min_m_s);
    CHECK(fixed.y == s.y);
    CHECK(fixed.x[1] == s.x[1]);
    CHECK(checkSolution(fixed, cfg).empty());
}

TEST_CASE("constraint checks name each violation")
{
    const auto cfg = genScenario(Scale::one, 5);
    Rng rng(2);
    auto s = randomSolution(cfg, rng);
    auto bad = s;
    bad.n_active = 9;
    CHECK_FALSE(checkSolution(bad, cfg).empty());
    bad = s;
    bad.assign[0] = s.n_active;
    CHECK_FALSE(checkSolution(bad, cfg).empty());
    bad = s;
    bad.uav_chan[0] = 3;
    CHECK_FALSE(checkSolution(bad, cfg).empty());
    bad = s;
    bad.direct_chan.pop_back();
    CHECK_FALSE(checkSolution(bad, cfg).empty());
    bad = s;
    bad.z[0] = 100.0;
    CHECK_FALSE(checkSolution(bad, cfg).empty());
    CHECK_THROWS_AS(evaluate(bad, cfg), std::logic_error);
}

TEST_CASE("padding leaves evaluation bit-identical")
{
    const auto cfg = genScenario(Scale::one, 9);
    Rng rng(31);
    for (int i = 0; i < 500; ++i) {
        const int n = rng.randint(cfg.n_min, cfg.n_max);
        auto s = randomSolution(cfg, rng);
        Solution active = s;
        active.n_active = n;
        for (auto& a : active.assign) a = rng.randint(0, n - 1);
        for (auto* v : {&active.x, &active.y, &active.z, &active.p, &active.v}) v->resize(static_cast<std::size_t>(n));
        active.uav_chan.resize(static_cast<std::size_t>(n));
        const auto padded = padSolution(active, cfg, rng);
        CHECK(padded.x.size() == 8);
        CHECK(padded.uav_chan.size() == 8);
        CHECK(padded.n_active == n);
        CHECK(evaluate(padded, cfg) == evaluate(active, cfg));
    }
    Rng r(4);
    auto full = randomSolution(cfg, r);
    full.n_active = cfg.n_max;
    for (auto& a : full.assign) a = 7;
    CHECK(padSolution(full, cfg, r) == full);
}

TEST_CASE("feasible objectives match the model exactly")
{
    const auto cfg = genScenario(Scale::one, 2);
    const auto s = evenSolution(cfg, 5);
    const auto o = evaluate(s, cfg);
    CHECK(o.feasible);
    CHECK(o.neg_f1 == -radio::networkCapacity(toPlacement(s, cfg), cfg));
    CHECK(o.f2 == 5.0);
    CHECK(o.f3 == energy::averageFlightEnergy(toFlightPlan(s, cfg), cfg.energy));
    CHECK(o.f1() > 0.0);
    CHECK(evaluate(s, cfg) == o);
}

TEST_CASE("penalty constants")
{
    const ObjectiveVector raw{-2e6, 4, 2000, true};
    const auto p = penalize(raw);
    CHECK(p.neg_f1 == 8e6);
    CHECK(p.f2 == 12.0);
    CHECK(p.f3 == 1.002e6);
    CHECK_FALSE(p.feasible);
}

TEST_CASE("time-spread violation penalizes all three components")
{
    const auto cfg = genScenario(Scale::one, 2);
    auto s = evenSolution(cfg, 4);
    s.x[0] = 380.0;
    s.y[0] = 380.0;
    s.v[0] = 6.0;
    const auto raw = rawObjectives(s, cfg);
    const auto pen = evaluate(s, cfg);
    CHECK_FALSE(raw.feasible);
    CHECK_FALSE(pen.feasible);
    CHECK(pen.neg_f1 == raw.neg_f1 + 1e7);
    CHECK(pen.f2 == raw.f2 + 8.0);
    CHECK(pen.f3 == raw.f3 + 1e6);
}
