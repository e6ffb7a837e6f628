#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "skyrelay/scenario.hpp"

namespace skyrelay::radio {

/// Active UAV deployment plus discrete assignment, as consumed by the radio
/// model. All index vectors are zero-based.
struct Placement {
    std::vector<Vec3> uav_xyz;
    std::vector<double> uav_tx_w;
    std::vector<int> assignment;      ///< length M, relayed pair -> UAV
    std::vector<int> uav_channel;     ///< length N, UAV -> channel
    std::vector<int> direct_channel;  ///< length K, direct pair -> channel

    int uavCount() const { return static_cast<int>(uav_xyz.size()); }
};

/// Throws std::invalid_argument if the placement's shapes or index ranges do
/// not fit the scenario.
void checkPlacement(const Placement& pl, const ScenarioConfig& cfg);

/// Air-to-ground path loss in dB with the elevation-angle LoS blend.
double pathLossA2G(Vec3 wd, Vec3 uav, const ChannelParams& ch);
double gainA2G(Vec3 wd, Vec3 uav, const ChannelParams& ch);
/// Ground-to-ground LoS gain beta0 * d^-alpha over horizontal distance.
double gainG2G(Vec2 a, Vec2 b, const ChannelParams& ch);

/// Number of relayed pairs served by UAV n.
int servedCount(int n, const Placement& pl);

/// Expected interference at UAV n while it receives relayed SWD m.
double expInterferenceAtUav(int m, int n, const Placement& pl, const ScenarioConfig& cfg);
/// Expected SINR of the SWD m -> UAV n hop.
double expSinrUplink(int m, int n, const Placement& pl, const ScenarioConfig& cfg);
/// Expected SINR of the UAV n -> DWD of pair m hop.
double expSinrDownlink(int n, int m, const Placement& pl, const ScenarioConfig& cfg);
/// Expected SINR of the direct SWD m -> DWD m leg on the serving UAV's channel.
double expSinrDirectLeg(int m, const Placement& pl, const ScenarioConfig& cfg);

/// Amplify-and-forward rate of pair m through UAV n in bit/s. Exactly zero
/// when n does not serve m.
double linkRate(int m, int n, const Placement& pl, const ScenarioConfig& cfg);

struct CapacityBreakdown {
    std::vector<double> per_pair;  ///< rate of each relayed pair
    std::vector<double> per_uav;   ///< rate summed over the pairs each UAV serves
    double total = 0.0;
};

/// Expected D2D network capacity with per-pair and per-UAV totals.
CapacityBreakdown capacityBreakdown(const Placement& pl, const ScenarioConfig& cfg);
double networkCapacity(const Placement& pl, const ScenarioConfig& cfg);

/// Capacity when every relayed pair transmits SWD -> DWD directly, at full
/// duty, on relayed_channel[m]. Direct pairs use direct_channel.
double directOnlyCapacity(const ScenarioConfig& cfg, std::span<const int> relayed_channel,
                          std::span<const int> direct_channel);
/// As above with direct-pair channels drawn uniformly from the seed.
double directOnlyCapacity(const ScenarioConfig& cfg, std::span<const int> relayed_channel, std::uint64_t seed);

/// Bits delivered per joule of transmit power. With UAVs the UAV powers are
/// added to the relayed SWD powers.
double commEnergyEfficiency(double capacity_bps, const Placement& pl, const ScenarioConfig& cfg, bool with_uavs);

} // namespace skyrelay::radio
