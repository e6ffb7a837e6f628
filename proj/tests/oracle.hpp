#pragma once

// Independent transcriptions used as test oracles. Nothing here calls into
// the library's radio, energy or moea code; every quantity is recomputed
// from the model definitions by direct enumeration.

#include <array>
#include <cmath>
#include <cstddef>
#include <set>
#include <vector>

#include "skyrelay/scenario.hpp"

namespace oracle {

struct P3 {
    double x, y, z;
};

inline double pathLossDb(P3 wd, P3 uav, const skyrelay::ChannelParams& ch)
{
    const double dx = wd.x - uav.x, dy = wd.y - uav.y, dz = wd.z - uav.z;
    const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
    const double theta_deg = std::asin((uav.z - wd.z) / d) * 180.0 / 3.14159265358979323846;
    const double los = (ch.eta_los_db - ch.eta_nlos_db) / (1.0 + ch.a * std::exp(-ch.b * (theta_deg - ch.a)));
    const double fspl = 20.0 * std::log10(4.0 * 3.14159265358979323846 * ch.carrier_hz * d / ch.light_speed_m_s);
    return los + fspl + ch.eta_nlos_db;
}

inline double a2g(double sx, double sy, const P3& uav, const skyrelay::ChannelParams& ch)
{
    return std::pow(10.0, -pathLossDb({sx, sy, 0.0}, uav, ch) / 10.0);
}

inline double g2g(double ax, double ay, double bx, double by, const skyrelay::ChannelParams& ch)
{
    const double d = std::hypot(ax - bx, ay - by);
    return std::pow(10.0, ch.beta0_db / 10.0) * std::pow(d, -ch.alpha);
}

inline double noise(const skyrelay::ChannelParams& ch)
{
    const double dbm = ch.noise_psd_dbm_hz + 10.0 * std::log10(ch.bandwidth_hz);
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

// Placement written out in plain arrays.
struct Net {
    std::vector<P3> uav;
    std::vector<double> uav_p;
    std::vector<int> serve;  // relayed pair -> UAV
    std::vector<int> chan;   // UAV -> channel
    std::vector<int> dchan;  // direct pair -> channel
};

// W_{n}: SWDs relayed by UAV n.
inline std::vector<int> served(const Net& net, int n)
{
    std::vector<int> w;
    for (std::size_t m = 0; m < net.serve.size(); ++m) {
        if (net.serve[m] == n) w.push_back(static_cast<int>(m));
    }
    return w;
}

// H_{c_n} \ {n}.
inline std::vector<int> coChannelOthers(const Net& net, int n)
{
    std::vector<int> h;
    for (std::size_t j = 0; j < net.uav.size(); ++j) {
        if (static_cast<int>(j) != n && net.chan[j] == net.chan[static_cast<std::size_t>(n)]) h.push_back(static_cast<int>(j));
    }
    return h;
}

// K_{c}: direct pairs on channel c.
inline std::vector<int> directOn(const Net& net, int c)
{
    std::vector<int> k;
    for (std::size_t i = 0; i < net.dchan.size(); ++i) {
        if (net.dchan[i] == c) k.push_back(static_cast<int>(i));
    }
    return k;
}

inline double interferenceAtUav(const Net& net, const skyrelay::ScenarioConfig& cfg, int n)
{
    const auto& ch = cfg.channel;
    double sum = 0.0;
    for (int other : coChannelOthers(net, n)) {
        const auto w = served(net, other);
        for (int m : w) {
            const auto& pr = cfg.relayed_pairs[static_cast<std::size_t>(m)];
            sum += pr.tx_power_w * a2g(pr.swd.x, pr.swd.y, net.uav[static_cast<std::size_t>(n)], ch) /
                   static_cast<double>(w.size());
        }
    }
    for (int k : directOn(net, net.chan[static_cast<std::size_t>(n)])) {
        const auto& dp = cfg.direct_pairs[static_cast<std::size_t>(k)];
        sum += dp.activity * dp.tx_power_w * a2g(dp.swd.x, dp.swd.y, net.uav[static_cast<std::size_t>(n)], ch);
    }
    return sum;
}

inline double sinrUp(const Net& net, const skyrelay::ScenarioConfig& cfg, int m)
{
    const int n = net.serve[static_cast<std::size_t>(m)];
    const auto& pr = cfg.relayed_pairs[static_cast<std::size_t>(m)];
    const double s = pr.tx_power_w * a2g(pr.swd.x, pr.swd.y, net.uav[static_cast<std::size_t>(n)], cfg.channel);
    return s / (noise(cfg.channel) + interferenceAtUav(net, cfg, n));
}

inline double interferenceAtDwd(const Net& net, const skyrelay::ScenarioConfig& cfg, int m)
{
    const int n = net.serve[static_cast<std::size_t>(m)];
    const auto& pr = cfg.relayed_pairs[static_cast<std::size_t>(m)];
    double sum = 0.0;
    for (int other : coChannelOthers(net, n)) {
        if (served(net, other).empty()) continue;
        sum += net.uav_p[static_cast<std::size_t>(other)] *
               a2g(pr.dwd.x, pr.dwd.y, net.uav[static_cast<std::size_t>(other)], cfg.channel);
    }
    for (int k : directOn(net, net.chan[static_cast<std::size_t>(n)])) {
        const auto& dp = cfg.direct_pairs[static_cast<std::size_t>(k)];
        sum += dp.activity * dp.tx_power_w * g2g(dp.swd.x, dp.swd.y, pr.dwd.x, pr.dwd.y, cfg.channel);
    }
    return sum;
}

inline double sinrDown(const Net& net, const skyrelay::ScenarioConfig& cfg, int m)
{
    const int n = net.serve[static_cast<std::size_t>(m)];
    const auto& pr = cfg.relayed_pairs[static_cast<std::size_t>(m)];
    const double s = net.uav_p[static_cast<std::size_t>(n)] *
                     a2g(pr.dwd.x, pr.dwd.y, net.uav[static_cast<std::size_t>(n)], cfg.channel);
    return s / (noise(cfg.channel) + interferenceAtDwd(net, cfg, m));
}

inline double sinrDirect(const Net& net, const skyrelay::ScenarioConfig& cfg, int m)
{
    const int n = net.serve[static_cast<std::size_t>(m)];
    const auto& pr = cfg.relayed_pairs[static_cast<std::size_t>(m)];
    double i = 0.0;
    for (int other : coChannelOthers(net, n)) {
        const auto w = served(net, other);
        for (int q : w) {
            const auto& src = cfg.relayed_pairs[static_cast<std::size_t>(q)];
            i += src.tx_power_w * g2g(src.swd.x, src.swd.y, pr.dwd.x, pr.dwd.y, cfg.channel) /
                 static_cast<double>(w.size());
        }
    }
    for (int k : directOn(net, net.chan[static_cast<std::size_t>(n)])) {
        const auto& dp = cfg.direct_pairs[static_cast<std::size_t>(k)];
        i += dp.activity * dp.tx_power_w * g2g(dp.swd.x, dp.swd.y, pr.dwd.x, pr.dwd.y, cfg.channel);
    }
    const double s = pr.tx_power_w * g2g(pr.swd.x, pr.swd.y, pr.dwd.x, pr.dwd.y, cfg.channel);
    return s / (noise(cfg.channel) + i);
}

inline double rate(const Net& net, const skyrelay::ScenarioConfig& cfg, int m)
{
    const int n = net.serve[static_cast<std::size_t>(m)];
    const double mu = static_cast<double>(served(net, n).size());
    const double gd = sinrDirect(net, cfg, m), gu = sinrUp(net, cfg, m), gl = sinrDown(net, cfg, m);
    return cfg.channel.bandwidth_hz / (2.0 * mu) * std::log2(1.0 + gd + gu * gl / (1.0 + gu + gl));
}

inline double capacity(const Net& net, const skyrelay::ScenarioConfig& cfg)
{
    double total = 0.0;
    for (std::size_t m = 0; m < net.serve.size(); ++m) total += rate(net, cfg, static_cast<int>(m));
    return total;
}

// Rotary-wing power, v0^2 in the subtracted induced term.
inline double power(double v, const skyrelay::EnergyParams& e)
{
    const double blade = e.p_blade_w * (1.0 + 3.0 * v * v / (e.tip_speed_m_s * e.tip_speed_m_s));
    const double v0 = e.rotor_induced_v_m_s;
    const double induced = e.p_induced_w * std::sqrt(std::sqrt(1.0 + std::pow(v, 4) / (4.0 * std::pow(v0, 4))) -
                                                     v * v / (2.0 * v0 * v0));
    const double parasite = 0.5 * e.drag_ratio * e.air_density_kg_m3 * e.rotor_solidity * e.disk_area_m2 * v * v * v;
    return blade + induced + parasite;
}

// Non-domination levels by repeated peeling with pairwise checks.
inline std::vector<int> peelRanks(const std::vector<std::array<double, 3>>& pts)
{
    auto dom = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
        bool strict = false;
        for (int j = 0; j < 3; ++j) {
            if (a[j] > b[j]) return false;
            if (a[j] < b[j]) strict = true;
        }
        return strict;
    };
    std::vector<int> rank(pts.size(), -1);
    std::set<std::size_t> left;
    for (std::size_t i = 0; i < pts.size(); ++i) left.insert(i);
    int level = 0;
    while (!left.empty()) {
        std::vector<std::size_t> layer;
        for (std::size_t i : left) {
            bool dominated = false;
            for (std::size_t j : left) {
                if (dom(pts[j], pts[i])) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) layer.push_back(i);
        }
        for (std::size_t i : layer) {
            rank[i] = level;
            left.erase(i);
        }
        ++level;
    }
    return rank;
}

} // namespace oracle
