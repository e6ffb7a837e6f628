#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "skyrelay/errors.hpp"

namespace skyrelay {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline Vec3 onGround(Vec2 p) { return {p.x, p.y, 0.0}; }

/// Air-to-ground and ground-to-ground propagation parameters.
struct ChannelParams {
    double a = 9.61;               ///< LoS sigmoid parameter
    double b = 0.16;               ///< LoS sigmoid parameter
    double eta_los_db = 1.0;       ///< excess loss on LoS links
    double eta_nlos_db = 20.0;     ///< excess loss on NLoS links
    double beta0_db = -60.0;       ///< ground-to-ground gain at 1 m
    double alpha = 2.0;            ///< ground-to-ground path-loss exponent
    double bandwidth_hz = 1e6;
    double carrier_hz = 2e9;
    double noise_psd_dbm_hz = -174.0;
    double light_speed_m_s = 2.998e8;

    /// beta0 as a linear power ratio.
    double beta0Linear() const;
    /// Noise power in watts, integrated over the channel bandwidth.
    double noisePowerW() const;

    friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

/// Rotary-wing propulsion model parameters.
struct EnergyParams {
    double p_blade_w = 79.8563;
    double p_induced_w = 88.6279;
    double tip_speed_m_s = 120.0;
    double rotor_induced_v_m_s = 4.03;
    double drag_ratio = 0.6;
    double air_density_kg_m3 = 1.225;
    double rotor_solidity = 0.05;
    double disk_area_m2 = 0.503;
    double uav_mass_kg = 2.0;
    double gravity_m_s2 = 9.8;
    // When set, the subtracted induced-power term divides by v0^4 instead of
    // v0^2. The bracket under the square root is clamped at zero.
    bool induced_quartic_denominator = false;

    friend bool operator==(const EnergyParams&, const EnergyParams&) = default;
};

enum class PairKind { relayed, direct };

struct DevicePair {
    PairKind kind = PairKind::relayed;
    Vec2 swd;
    Vec2 dwd;
    double tx_power_w = 0.01;
    double activity = 1.0;  ///< transmit probability; always 1 for relayed pairs

    friend bool operator==(const DevicePair&, const DevicePair&) = default;
};

/// The immutable world every solver works against. Indices used throughout
/// the library are zero-based: relayed pair m in [0, M), UAV n in [0, N),
/// channel u in [0, U).
struct ScenarioConfig {
    std::vector<DevicePair> relayed_pairs;
    std::vector<DevicePair> direct_pairs;
    int n_min = 4;
    int n_max = 8;
    int u_channels = 3;
    double l_min_m = 0.0;
    double l_max_m = 400.0;
    double z_min_m = 200.0;
    double z_max_m = 500.0;
    double v_min_m_s = 6.0;
    double v_max_m_s = 16.0;
    double p_min_w = 0.1;
    double p_max_w = 1.0;
    double t_th_s = 12.0;
    ChannelParams channel;
    EnergyParams energy;

    int relayedCount() const { return static_cast<int>(relayed_pairs.size()); }
    int directCount() const { return static_cast<int>(direct_pairs.size()); }
    /// All UAVs take off from (0, 0, z_min).
    Vec3 origin() const { return {0.0, 0.0, z_min_m}; }

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

enum class Scale { one, two };

/// Builds the reference scenario for a scale. Device positions are a pure
/// function of the seed.
ScenarioConfig genScenario(Scale scale, std::uint64_t seed);

/// Returns one message per violated invariant; empty when the config is valid.
std::vector<std::string> checkScenario(const ScenarioConfig& cfg);
/// Throws ScenarioError listing every violation.
void validateScenario(const ScenarioConfig& cfg);

std::string scenarioToJson(const ScenarioConfig& cfg);
/// Parses and validates. Throws ScenarioError on bad documents.
ScenarioConfig scenarioFromJson(const std::string& text);

void saveScenario(const ScenarioConfig& cfg, const std::filesystem::path& path);
/// Throws IoError when the file cannot be read, ScenarioError otherwise.
ScenarioConfig loadScenario(const std::filesystem::path& path);

} // namespace skyrelay
