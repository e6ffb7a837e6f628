#pragma once

#include <cmath>
#include <vector>

#include "oracle.hpp"
#include "skyrelay/radio.hpp"
#include "skyrelay/rng.hpp"
#include "skyrelay/scenario.hpp"

namespace testing {

// Relative closeness with an absolute floor for values near zero.
inline bool close(double a, double b, double rel, double abs_floor = 0.0)
{
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

// Small random scenario with m relayed and k direct pairs.
inline skyrelay::ScenarioConfig smallScenario(int m, int k, skyrelay::Rng& rng)
{
    skyrelay::ScenarioConfig cfg;
    cfg.n_min = 2;
    cfg.n_max = 3;
    cfg.u_channels = 1;
    auto pt = [&] { return skyrelay::Vec2{rng.uniform(cfg.l_min_m, cfg.l_max_m), rng.uniform(cfg.l_min_m, cfg.l_max_m)}; };
    for (int i = 0; i < m; ++i) {
        skyrelay::DevicePair p;
        p.swd = pt();
        p.dwd = pt();
        p.tx_power_w = rng.uniform(0.005, 0.02);
        cfg.relayed_pairs.push_back(p);
    }
    for (int i = 0; i < k; ++i) {
        skyrelay::DevicePair p;
        p.kind = skyrelay::PairKind::direct;
        p.swd = pt();
        p.dwd = pt();
        p.tx_power_w = rng.uniform(0.005, 0.02);
        p.activity = rng.uniform(0.1, 1.0);
        cfg.direct_pairs.push_back(p);
    }
    return cfg;
}

inline skyrelay::radio::Placement randomPlacement(const skyrelay::ScenarioConfig& cfg, int n, int u, skyrelay::Rng& rng)
{
    skyrelay::radio::Placement pl;
    for (int i = 0; i < n; ++i) {
        pl.uav_xyz.push_back({rng.uniform(cfg.l_min_m, cfg.l_max_m), rng.uniform(cfg.l_min_m, cfg.l_max_m),
                              rng.uniform(cfg.z_min_m, cfg.z_max_m)});
        pl.uav_tx_w.push_back(rng.uniform(cfg.p_min_w, cfg.p_max_w));
        pl.uav_channel.push_back(rng.randint(0, u - 1));
    }
    for (int m = 0; m < cfg.relayedCount(); ++m) pl.assignment.push_back(rng.randint(0, n - 1));
    for (int k = 0; k < cfg.directCount(); ++k) pl.direct_channel.push_back(rng.randint(0, u - 1));
    return pl;
}

inline oracle::Net toNet(const skyrelay::radio::Placement& pl)
{
    oracle::Net net;
    for (const auto& p : pl.uav_xyz) net.uav.push_back({p.x, p.y, p.z});
    net.uav_p = pl.uav_tx_w;
    net.serve = pl.assignment;
    net.chan = pl.uav_channel;
    net.dchan = pl.direct_channel;
    return net;
}

} // namespace testing
