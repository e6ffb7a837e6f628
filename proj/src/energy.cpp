#include "skyrelay/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skyrelay::energy {

namespace {

double distance(Vec3 a, Vec3 b)
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void checkPlan(const FlightPlan& plan)
{
    if (plan.dest_xyz.empty()) {
        throw DomainError("flight plan has no UAVs");
    }
    if (plan.dest_xyz.size() != plan.speed_m_s.size()) {
        throw std::invalid_argument("flight plan: destination and speed counts differ");
    }
}

} // namespace

double propulsionPower(double v, const EnergyParams& ep)
{
    if (v < 0.0) {
        throw DomainError("propulsionPower: negative speed");
    }
    const double v2 = v * v;
    const double v0sq = ep.rotor_induced_v_m_s * ep.rotor_induced_v_m_s;
    const double v0quad = v0sq * v0sq;
    const double blade = ep.p_blade_w * (1.0 + 3.0 * v2 / (ep.tip_speed_m_s * ep.tip_speed_m_s));
    const double subtract = ep.induced_quartic_denominator ? v2 / (2.0 * v0quad) : v2 / (2.0 * v0sq);
    // Guard against rounding; for v0 >= 1 neither reading goes negative.
    const double bracket = std::max(0.0, std::sqrt(1.0 + v2 * v2 / (4.0 * v0quad)) - subtract);
    const double induced = ep.p_induced_w * std::sqrt(bracket);
    const double parasite = 0.5 * ep.drag_ratio * ep.air_density_kg_m3 * ep.rotor_solidity * ep.disk_area_m2 * v2 * v;
    return blade + induced + parasite;
}

double flightTime(Vec3 dest, double speed, Vec3 origin)
{
    if (!(speed > 0.0)) {
        throw DomainError("flight speed must be positive");
    }
    return distance(dest, origin) / speed;
}

double flightEnergy(Vec3 dest, double speed, Vec3 origin, const EnergyParams& ep)
{
    const double t = flightTime(dest, speed, origin);
    // Constant cruise speed: the kinetic term vanishes.
    return propulsionPower(speed, ep) * t + ep.uav_mass_kg * ep.gravity_m_s2 * (dest.z - origin.z);
}

double averageFlightEnergy(const FlightPlan& plan, const EnergyParams& ep)
{
    checkPlan(plan);
    double sum = 0.0;
    for (int n = 0; n < plan.uavCount(); ++n) {
        sum += flightEnergy(plan.dest_xyz[static_cast<std::size_t>(n)], plan.speed_m_s[static_cast<std::size_t>(n)],
                            plan.origin_xyz, ep);
    }
    return sum / plan.uavCount();
}

double flightTimeSpread(const FlightPlan& plan)
{
    checkPlan(plan);
    double lo = INFINITY;
    double hi = -INFINITY;
    for (std::size_t n = 0; n < plan.dest_xyz.size(); ++n) {
        const double t = flightTime(plan.dest_xyz[n], plan.speed_m_s[n], plan.origin_xyz);
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    return hi - lo;
}

} // namespace skyrelay::energy
