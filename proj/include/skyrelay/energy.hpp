#pragma once

#include <vector>

#include "skyrelay/scenario.hpp"

namespace skyrelay::energy {

/// Straight-line deployment flight of every active UAV from a common origin.
struct FlightPlan {
    std::vector<Vec3> dest_xyz;
    std::vector<double> speed_m_s;
    Vec3 origin_xyz;

    int uavCount() const { return static_cast<int>(dest_xyz.size()); }
};

/// Rotary-wing propulsion power in W at level speed v.
double propulsionPower(double v, const EnergyParams& ep);

/// Energy in J to fly straight from origin to dest at constant speed, plus
/// the potential-energy change.
double flightEnergy(Vec3 dest, double speed, Vec3 origin, const EnergyParams& ep);

double flightTime(Vec3 dest, double speed, Vec3 origin);

/// Mean flight energy over the plan's UAVs.
double averageFlightEnergy(const FlightPlan& plan, const EnergyParams& ep);

/// Latest arrival minus earliest arrival, in seconds.
double flightTimeSpread(const FlightPlan& plan);

} // namespace skyrelay::energy
