#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracle.hpp"
#include "skyrelay/energy.hpp"
#include "skyrelay/errors.hpp"
#include "skyrelay/rng.hpp"

using namespace skyrelay;
using namespace skyrelay::energy;

namespace {

// Independent calculator values with the default parameters.
constexpr double kPowerAt10 = 126.029074066392;
constexpr double kEnergy500At10 = 6301.453703319617;

} // namespace

TEST_CASE("hover power is blade plus induced power")
{
    const EnergyParams ep;
    CHECK(std::abs(propulsionPower(0.0, ep) - (ep.p_blade_w + ep.p_induced_w)) < 1e-9);
    CHECK(propulsionPower(0.0, ep) == doctest::Approx(168.4842).epsilon(1e-9));
}

TEST_CASE("forward-flight power matches the transcription")
{
    const EnergyParams ep;
    CHECK(propulsionPower(10.0, ep) == doctest::Approx(kPowerAt10).epsilon(1e-12));
    CHECK(std::abs(propulsionPower(10.0, ep) - 126.08) < 0.1);
    for (double v = 0.0; v <= 30.0; v += 0.37) {
        CHECK(propulsionPower(v, ep) == doctest::Approx(oracle::power(v, ep)).epsilon(1e-12));
        CHECK(propulsionPower(v, ep) > 0.0);
    }
}

TEST_CASE("power is continuous in speed")
{
    const EnergyParams ep;
    for (double v = 0.0; v <= 30.0; v += 0.01) {
        CHECK(std::abs(propulsionPower(v + 1e-6, ep) - propulsionPower(v, ep)) < 1e-2);
    }
}

TEST_CASE("quartic denominator switch")
{
    EnergyParams ep;
    ep.induced_quartic_denominator = true;
    CHECK(propulsionPower(0.0, ep) == doctest::Approx(ep.p_blade_w + ep.p_induced_w));
    const double v0 = ep.rotor_induced_v_m_s;
    for (double v : {1.0, 5.0, 10.0, 16.0, 40.0}) {
        const double blade = ep.p_blade_w * (1.0 + 3.0 * v * v / (120.0 * 120.0));
        const double induced =
            ep.p_induced_w * std::sqrt(std::sqrt(1.0 + std::pow(v / v0, 4) / 4.0) - v * v / (2.0 * std::pow(v0, 4)));
        const double parasite = 0.5 * 0.6 * 1.225 * 0.05 * 0.503 * v * v * v;
        CHECK(propulsionPower(v, ep) == doctest::Approx(blade + induced + parasite).epsilon(1e-12));
        CHECK(propulsionPower(v, ep) > propulsionPower(v, EnergyParams{}));
    }
}

TEST_CASE("flight energy anchors")
{
    const EnergyParams ep;
    const Vec3 origin{0, 0, 200};
    const double e = flightEnergy({300, 400, 200}, 10.0, origin, ep);
    CHECK(e == doctest::Approx(kEnergy500At10).epsilon(1e-12));
    CHECK(std::abs(e - 50.0 * propulsionPower(10.0, ep)) < 1e-9);
    CHECK(std::abs(e - 6304.0) < 5.0);
    CHECK(flightEnergy(origin, 10.0, origin, ep) == 0.0);
    CHECK(flightTime({300, 400, 200}, 10.0, origin) == doctest::Approx(50.0));
}

TEST_CASE("climbing adds exactly the potential energy on top of the time integral")
{
    const EnergyParams ep;
    const Vec3 origin{0, 0, 200};
    const Vec3 dest{300, 400, 300};
    const double d = std::sqrt(300.0 * 300 + 400.0 * 400 + 100.0 * 100);
    const double expect = propulsionPower(12.0, ep) * d / 12.0 + 2.0 * 9.8 * 100.0;
    CHECK(flightEnergy(dest, 12.0, origin, ep) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("non-positive speed is rejected")
{
    const EnergyParams ep;
    CHECK_THROWS_AS(flightEnergy({1, 1, 200}, 0.0, {0, 0, 200}, ep), DomainError);
    CHECK_THROWS_AS(flightTime({1, 1, 200}, -1.0, {0, 0, 200}), DomainError);
}

TEST_CASE("average energy and time spread")
{
    const EnergyParams ep;
    FlightPlan plan;
    plan.origin_xyz = {0, 0, 200};
    plan.dest_xyz = {{300, 0, 200}, {0, 400, 200}};
    plan.speed_m_s = {10, 10};
    CHECK(flightTimeSpread(plan) == doctest::Approx(10.0));
    CHECK(flightTimeSpread(plan) <= 12.0);
    const double e1 = flightEnergy({300, 0, 200}, 10, plan.origin_xyz, ep);
    const double e2 = flightEnergy({0, 400, 200}, 10, plan.origin_xyz, ep);
    CHECK(averageFlightEnergy(plan, ep) == doctest::Approx((e1 + e2) / 2.0).epsilon(1e-14));

    FlightPlan single;
    single.origin_xyz = plan.origin_xyz;
    single.dest_xyz = {{100, 100, 250}};
    single.speed_m_s = {7};
    CHECK(flightTimeSpread(single) == 0.0);
    CHECK(averageFlightEnergy(single, ep) == flightEnergy({100, 100, 250}, 7, plan.origin_xyz, ep));

    FlightPlan same = plan;
    same.dest_xyz = {{300, 0, 200}, {0, 300, 200}};
    CHECK(flightTimeSpread(same) == 0.0);
    CHECK(averageFlightEnergy(same, ep) == doctest::Approx(e1));

    FlightPlan empty;
    CHECK_THROWS_AS(averageFlightEnergy(empty, ep), DomainError);
    CHECK_THROWS_AS(flightTimeSpread(empty), DomainError);
}

TEST_CASE("random plans: permutation invariance and per-UAV oracle")
{
    const EnergyParams ep;
    Rng rng(17);
    for (int t = 0; t < 200; ++t) {
        FlightPlan plan;
        plan.origin_xyz = {0, 0, 200};
        const int n = rng.randint(1, 8);
        double sum = 0.0;
        double tmin = 1e300, tmax = -1e300;
        for (int i = 0; i < n; ++i) {
            const Vec3 d{rng.uniform(0, 400), rng.uniform(0, 400), rng.uniform(200, 500)};
            const double v = rng.uniform(6, 16);
            plan.dest_xyz.push_back(d);
            plan.speed_m_s.push_back(v);
            const double dist = std::sqrt(d.x * d.x + d.y * d.y + (d.z - 200) * (d.z - 200));
            sum += oracle::power(v, ep) * dist / v + 2.0 * 9.8 * (d.z - 200.0);
            tmin = std::min(tmin, dist / v);
            tmax = std::max(tmax, dist / v);
        }
        CHECK(averageFlightEnergy(plan, ep) == doctest::Approx(sum / n).epsilon(1e-12));
        CHECK(flightTimeSpread(plan) == doctest::Approx(tmax - tmin).epsilon(1e-12));
        CHECK(averageFlightEnergy(plan, ep) >= 0.0);

        FlightPlan rev = plan;
        std::reverse(rev.dest_xyz.begin(), rev.dest_xyz.end());
        std::reverse(rev.speed_m_s.begin(), rev.speed_m_s.end());
        CHECK(averageFlightEnergy(rev, ep) == doctest::Approx(averageFlightEnergy(plan, ep)).epsilon(1e-13));
        CHECK(flightTimeSpread(rev) == flightTimeSpread(plan));
    }
}
