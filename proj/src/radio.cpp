#include "skyrelay/radio.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "skyrelay/rng.hpp"

namespace skyrelay::radio {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Pairs served by each UAV, built once per placement.
struct ServiceIndex {
    std::vector<std::vector<int>> members;

    ServiceIndex(const Placement& pl)
        : members(static_cast<std::size_t>(pl.uavCount()))
    {
        for (int m = 0; m < static_cast<int>(pl.assignment.size()); ++m) {
            members[static_cast<std::size_t>(pl.assignment[static_cast<std::size_t>(m)])].push_back(m);
        }
    }

    const std::vector<int>& of(int n) const { return members[static_cast<std::size_t>(n)]; }
};

template <class T>
const T& at(const std::vector<T>& v, int i)
{
    return v[static_cast<std::size_t>(i)];
}

void checkPairIndex(int m, const ScenarioConfig& cfg)
{
    if (m < 0 || m >= cfg.relayedCount()) {
        throw std::out_of_range("relayed pair index " + std::to_string(m) + " out of range");
    }
}

void checkUavIndex(int n, const Placement& pl)
{
    if (n < 0 || n >= pl.uavCount()) {
        throw std::out_of_range("UAV index " + std::to_string(n) + " out of range");
    }
}

void requireServed(int m, int n, const Placement& pl)
{
    if (at(pl.assignment, m) != n) {
        throw std::invalid_argument("UAV " + std::to_string(n) + " does not serve pair " + std::to_string(m));
    }
}

// Direct-pair SWDs on channel c, weighted by their activity, received at a
// point through `gain`.
template <class Gain>
double directPairInterference(int channel, const Placement& pl, const ScenarioConfig& cfg, Gain&& gain)
{
    double sum = 0.0;
    for (int k = 0; k < cfg.directCount(); ++k) {
        if (at(pl.direct_channel, k) != channel) continue;
        const auto& dp = at(cfg.direct_pairs, k);
        sum += dp.activity * dp.tx_power_w * gain(dp.swd);
    }
    return sum;
}

// Round-robin averaged SWD interference from co-channel UAV cells other than n.
template <class Gain>
double cochannelSwdInterference(int n, const ServiceIndex& idx, const Placement& pl, const ScenarioConfig& cfg,
                                Gain&& gain)
{
    const int channel = at(pl.uav_channel, n);
    double sum = 0.0;
    for (int other = 0; other < pl.uavCount(); ++other) {
        if (other == n || at(pl.uav_channel, other) != channel) continue;
        const auto& cell = idx.of(other);
        if (cell.empty()) continue;
        double cellSum = 0.0;
        for (int w : cell) {
            const auto& pair = at(cfg.relayed_pairs, w);
            cellSum += pair.tx_power_w * gain(pair.swd);
        }
        sum += cellSum / static_cast<double>(cell.size());
    }
    return sum;
}

double uplinkInterference(int n, const ServiceIndex& idx, const Placement& pl, const ScenarioConfig& cfg)
{
    const Vec3 uav = at(pl.uav_xyz, n);
    auto toUav = [&](Vec2 p) { return gainA2G(onGround(p), uav, cfg.channel); };
    return cochannelSwdInterference(n, idx, pl, cfg, toUav) +
           directPairInterference(at(pl.uav_channel, n), pl, cfg, toUav);
}

double downlinkInterference(int n, int m, const ServiceIndex& idx, const Placement& pl, const ScenarioConfig& cfg)
{
    const int channel = at(pl.uav_channel, n);
    const Vec2 dwd = at(cfg.relayed_pairs, m).dwd;
    double sum = 0.0;
    for (int other = 0; other < pl.uavCount(); ++other) {
        if (other == n || at(pl.uav_channel, other) != channel) continue;
        // An idle UAV has no downlink to interfere with.
        if (idx.of(other).empty()) continue;
        sum += at(pl.uav_tx_w, other) * gainA2G(onGround(dwd), at(pl.uav_xyz, other), cfg.channel);
    }
    sum += directPairInterference(channel, pl, cfg, [&](Vec2 p) { return gainG2G(p, dwd, cfg.channel); });
    return sum;
}

double directLegInterference(int n, int m, const ServiceIndex& idx, const Placement& pl, const ScenarioConfig& cfg)
{
    const Vec2 dwd = at(cfg.relayed_pairs, m).dwd;
    auto toDwd = [&](Vec2 p) { return gainG2G(p, dwd, cfg.channel); };
    return cochannelSwdInterference(n, idx, pl, cfg, toDwd) +
           directPairInterference(at(pl.uav_channel, n), pl, cfg, toDwd);
}

double uplinkSignal(int m, int n, const Placement& pl, const ScenarioConfig& cfg)
{
    const auto& pair = at(cfg.relayed_pairs, m);
    return pair.tx_power_w * gainA2G(onGround(pair.swd), at(pl.uav_xyz, n), cfg.channel);
}

double downlinkSignal(int n, int m, const Placement& pl, const ScenarioConfig& cfg)
{
    return at(pl.uav_tx_w, n) * gainA2G(onGround(at(cfg.relayed_pairs, m).dwd), at(pl.uav_xyz, n), cfg.channel);
}

double directLegSignal(int m, const ScenarioConfig& cfg)
{
    const auto& pair = at(cfg.relayed_pairs, m);
    return pair.tx_power_w * gainG2G(pair.swd, pair.dwd, cfg.channel);
}

double afRate(double bandwidth, int served, double direct, double up, double down)
{
    const double relayed = up * down / (1.0 + up + down);
    return bandwidth / (2.0 * served) * std::log2(1.0 + direct + relayed);
}

} // namespace

void checkPlacement(const Placement& pl, const ScenarioConfig& cfg)
{
    const int n = pl.uavCount();
    if (static_cast<int>(pl.uav_tx_w.size()) != n || static_cast<int>(pl.uav_channel.size()) != n) {
        throw std::invalid_argument("placement: UAV arrays differ in length");
    }
    if (static_cast<int>(pl.assignment.size()) != cfg.relayedCount()) {
        throw std::invalid_argument("placement: assignment length differs from M");
    }
    if (static_cast<int>(pl.direct_channel.size()) != cfg.directCount()) {
        throw std::invalid_argument("placement: direct channel length differs from K");
    }
    for (int r : pl.assignment) {
        if (r < 0 || r >= n) throw std::invalid_argument("placement: assignment references a missing UAV");
    }
    for (int c : pl.uav_channel) {
        if (c < 0 || c >= cfg.u_channels) throw std::invalid_argument("placement: UAV channel out of range");
    }
    for (int c : pl.direct_channel) {
        if (c < 0 || c >= cfg.u_channels) throw std::invalid_argument("placement: direct channel out of range");
    }
}

double pathLossA2G(Vec3 wd, Vec3 uav, const ChannelParams& ch)
{
    const double dx = uav.x - wd.x;
    const double dy = uav.y - wd.y;
    const double dz = uav.z - wd.z;
    const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (!(d > 0.0)) {
        throw DomainError("pathLossA2G: coincident points");
    }
    const double thetaDeg = kRadToDeg * std::asin(dz / d);
    const double los = (ch.eta_los_db - ch.eta_nlos_db) / (1.0 + ch.a * std::exp(-ch.b * (thetaDeg - ch.a)));
    const double fspl = 20.0 * std::log10(4.0 * std::numbers::pi * ch.carrier_hz * d / ch.light_speed_m_s);
    return los + fspl + ch.eta_nlos_db;
}

double gainA2G(Vec3 wd, Vec3 uav, const ChannelParams& ch)
{
    return std::pow(10.0, -pathLossA2G(wd, uav, ch) / 10.0);
}

double gainG2G(Vec2 a, Vec2 b, const ChannelParams& ch)
{
    const double d = std::hypot(a.x - b.x, a.y - b.y);
    if (!(d > 0.0)) {
        throw DomainError("gainG2G: coincident points");
    }
    return ch.beta0Linear() * std::pow(d, -ch.alpha);
}

int servedCount(int n, const Placement& pl)
{
    int count = 0;
    for (int r : pl.assignment) {
        count += r == n ? 1 : 0;
    }
    return count;
}

double expInterferenceAtUav(int m, int n, const Placement& pl, const ScenarioConfig& cfg)
{
    checkPairIndex(m, cfg);
    checkUavIndex(n, pl);
    checkPlacement(pl, cfg);
    requireServed(m, n, pl);
    return uplinkInterference(n, ServiceIndex(pl), pl, cfg);
}

double expSinrUplink(int m, int n, const Placement& pl, const ScenarioConfig& cfg)
{
    const double interference = expInterferenceAtUav(m, n, pl, cfg);
    return uplinkSignal(m, n, pl, cfg) / (cfg.channel.noisePowerW() + interference);
}

double expSinrDownlink(int n, int m, const Placement& pl, const ScenarioConfig& cfg)
{
    checkPairIndex(m, cfg);
    checkUavIndex(n, pl);
    checkPlacement(pl, cfg);
    requireServed(m, n, pl);
    const double interference = downlinkInterference(n, m, ServiceIndex(pl), pl, cfg);
    return downlinkSignal(n, m, pl, cfg) / (cfg.channel.noisePowerW() + interference);
}

double expSinrDirectLeg(int m, const Placement& pl, const ScenarioConfig& cfg)
{
    checkPairIndex(m, cfg);
    checkPlacement(pl, cfg);
    const int n = at(pl.assignment, m);
    const double interference = directLegInterference(n, m, ServiceIndex(pl), pl, cfg);
    return directLegSignal(m, cfg) / (cfg.channel.noisePowerW() + interference);
}

double linkRate(int m, int n, const Placement& pl, const ScenarioConfig& cfg)
{
    checkPairIndex(m, cfg);
    checkUavIndex(n, pl);
    checkPlacement(pl, cfg);
    if (at(pl.assignment, m) != n) {
        return 0.0;
    }
    return afRate(cfg.channel.bandwidth_hz, servedCount(n, pl), expSinrDirectLeg(m, pl, cfg),
                  expSinrUplink(m, n, pl, cfg), expSinrDownlink(n, m, pl, cfg));
}

CapacityBreakdown capacityBreakdown(const Placement& pl, const ScenarioConfig& cfg)
{
    checkPlacement(pl, cfg);
    const ServiceIndex idx(pl);
    const double noise = cfg.channel.noisePowerW();
    const int uavs = pl.uavCount();

    // Uplink interference depends only on the receiving UAV.
    std::vector<double> uplinkI(static_cast<std::size_t>(uavs), 0.0);
    for (int n = 0; n < uavs; ++n) {
        if (!idx.of(n).empty()) uplinkI[static_cast<std::size_t>(n)] = uplinkInterference(n, idx, pl, cfg);
    }

    CapacityBreakdown out;
    out.per_pair.assign(static_cast<std::size_t>(cfg.relayedCount()), 0.0);
    out.per_uav.assign(static_cast<std::size_t>(uavs), 0.0);
    for (int m = 0; m < cfg.relayedCount(); ++m) {
        const int n = at(pl.assignment, m);
        const double up = uplinkSignal(m, n, pl, cfg) / (noise + uplinkI[static_cast<std::size_t>(n)]);
        const double down = downlinkSignal(n, m, pl, cfg) / (noise + downlinkInterference(n, m, idx, pl, cfg));
        const double direct = directLegSignal(m, cfg) / (noise + directLegInterference(n, m, idx, pl, cfg));
        const double rate = afRate(cfg.channel.bandwidth_hz, static_cast<int>(idx.of(n).size()), direct, up, down);
        out.per_pair[static_cast<std::size_t>(m)] = rate;
        out.per_uav[static_cast<std::size_t>(n)] += rate;
        out.total += rate;
    }
    return out;
}

double networkCapacity(const Placement& pl, const ScenarioConfig& cfg)
{
    return capacityBreakdown(pl, cfg).total;
}

double directOnlyCapacity(const ScenarioConfig& cfg, std::span<const int> relayed_channel,
                          std::span<const int> direct_channel)
{
    const int m_count = cfg.relayedCount();
    if (static_cast<int>(relayed_channel.size()) != m_count ||
        static_cast<int>(direct_channel.size()) != cfg.directCount()) {
        throw std::invalid_argument("directOnlyCapacity: channel vector length mismatch");
    }
    for (int c : relayed_channel) {
        if (c < 0 || c >= cfg.u_channels) throw std::invalid_argument("directOnlyCapacity: channel out of range");
    }
    for (int c : direct_channel) {
        if (c < 0 || c >= cfg.u_channels) throw std::invalid_argument("directOnlyCapacity: channel out of range");
    }

    const double noise = cfg.channel.noisePowerW();
    double total = 0.0;
    for (int m = 0; m < m_count; ++m) {
        const auto& pair = at(cfg.relayed_pairs, m);
        const int channel = relayed_channel[static_cast<std::size_t>(m)];
        double interference = 0.0;
        for (int other = 0; other < m_count; ++other) {
            if (other == m || relayed_channel[static_cast<std::size_t>(other)] != channel) continue;
            const auto& op = at(cfg.relayed_pairs, other);
            interference += op.tx_power_w * gainG2G(op.swd, pair.dwd, cfg.channel);
        }
        for (int k = 0; k < cfg.directCount(); ++k) {
            if (direct_channel[static_cast<std::size_t>(k)] != channel) continue;
            const auto& dp = at(cfg.direct_pairs, k);
            interference += dp.activity * dp.tx_power_w * gainG2G(dp.swd, pair.dwd, cfg.channel);
        }
        const double sinr = directLegSignal(m, cfg) / (noise + interference);
        total += cfg.channel.bandwidth_hz * std::log2(1.0 + sinr);
    }
    return total;
}

double directOnlyCapacity(const ScenarioConfig& cfg, std::span<const int> relayed_channel, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<int> direct(static_cast<std::size_t>(cfg.directCount()));
    for (auto& c : direct) c = rng.randint(0, cfg.u_channels - 1);
    return directOnlyCapacity(cfg, relayed_channel, direct);
}

double commEnergyEfficiency(double capacity_bps, const Placement& pl, const ScenarioConfig& cfg, bool with_uavs)
{
    if (capacity_bps < 0.0) {
        throw DomainError("commEnergyEfficiency: negative capacity");
    }
    double power = 0.0;
    for (const auto& pair : cfg.relayed_pairs) power += pair.tx_power_w;
    if (with_uavs) {
        for (double p : pl.uav_tx_w) power += p;
    }
    if (!(power > 0.0)) {
        throw DomainError("commEnergyEfficiency: zero transmit power");
    }
    return capacity_bps / power;
}

} // namespace skyrelay::radio
