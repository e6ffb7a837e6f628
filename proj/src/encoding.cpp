#include "skyrelay/encoding.hpp"

#include <cmath>
#include <stdexcept>

#include "skyrelay/operators.hpp"

namespace skyrelay {

namespace {

enum Block { kX, kY, kZ, kP, kV, kBlocks };

template <class S>
auto& block(S& sol, int b)
{
    switch (b) {
    case kX: return sol.x;
    case kY: return sol.y;
    case kZ: return sol.z;
    case kP: return sol.p;
    default: return sol.v;
    }
}

std::pair<double, double> blockBounds(const ScenarioConfig& cfg, int b)
{
    switch (b) {
    case kX:
    case kY: return {cfg.l_min_m, cfg.l_max_m};
    case kZ: return {cfg.z_min_m, cfg.z_max_m};
    case kP: return {cfg.p_min_w, cfg.p_max_w};
    default: return {cfg.v_min_m_s, cfg.v_max_m_s};
    }
}

bool inside(double value, std::pair<double, double> bounds)
{
    return value >= bounds.first && value <= bounds.second;
}

const char* blockName(int b)
{
    static const char* names[] = {"x", "y", "z", "p", "v"};
    return names[b];
}

} // namespace

int continuousDimension(const ScenarioConfig& cfg)
{
    return kBlocks * cfg.n_max;
}

GeneBounds continuousBounds(const ScenarioConfig& cfg)
{
    GeneBounds out;
    for (int b = 0; b < kBlocks; ++b) {
        const auto [lo, hi] = blockBounds(cfg, b);
        out.lower.insert(out.lower.end(), static_cast<std::size_t>(cfg.n_max), lo);
        out.upper.insert(out.upper.end(), static_cast<std::size_t>(cfg.n_max), hi);
    }
    return out;
}

std::vector<double> continuousGenes(const Solution& sol)
{
    std::vector<double> genes;
    for (int b = 0; b < kBlocks; ++b) {
        const auto& src = block(sol, b);
        genes.insert(genes.end(), src.begin(), src.end());
    }
    return genes;
}

void setContinuousGenes(Solution& sol, std::span<const double> genes)
{
    if (genes.size() % kBlocks != 0) {
        throw std::invalid_argument("continuous gene count must be a multiple of 5");
    }
    const std::size_t slots = genes.size() / kBlocks;
    for (int b = 0; b < kBlocks; ++b) {
        const auto first = genes.begin() + static_cast<std::ptrdiff_t>(slots * static_cast<std::size_t>(b));
        block(sol, b).assign(first, first + static_cast<std::ptrdiff_t>(slots));
    }
}

Solution randomSolution(const ScenarioConfig& cfg, Rng& rng)
{
    Solution sol;
    for (int b = 0; b < kBlocks; ++b) {
        const auto [lo, hi] = blockBounds(cfg, b);
        auto& dst = block(sol, b);
        dst.resize(static_cast<std::size_t>(cfg.n_max));
        for (auto& g : dst) g = rng.uniform(lo, hi);
    }
    solvers::setDiscretePart(sol, solvers::randomSearchOperator(cfg, rng));
    return sol;
}

Solution repairContinuous(Solution sol, const ScenarioConfig& cfg, Rng& rng)
{
    for (int b = 0; b < kBlocks; ++b) {
        const auto bounds = blockBounds(cfg, b);
        for (auto& g : block(sol, b)) {
            if (!inside(g, bounds)) {
                g = bounds.first + rng.uniform01() * (bounds.second - bounds.first);
            }
        }
    }
    return sol;
}

Solution padSolution(Solution sol, const ScenarioConfig& cfg, Rng& rng)
{
    const auto slots = static_cast<std::size_t>(cfg.n_max);
    for (int b = 0; b < kBlocks; ++b) {
        const auto [lo, hi] = blockBounds(cfg, b);
        auto& dst = block(sol, b);
        while (dst.size() < slots) dst.push_back(rng.uniform(lo, hi));
    }
    while (sol.uav_chan.size() < slots) sol.uav_chan.push_back(rng.randint(0, cfg.u_channels - 1));
    return sol;
}

std::vector<std::string> checkSolution(const Solution& sol, const ScenarioConfig& cfg)
{
    std::vector<std::string> out;
    const int n = sol.n_active;
    if (n < cfg.n_min || n > cfg.n_max) {
        out.push_back("C9: UAV count " + std::to_string(n) + " outside [N_min, N_max]");
        return out;
    }
    const auto active = static_cast<std::size_t>(n);
    for (int b = 0; b < kBlocks; ++b) {
        const auto& src = block(sol, b);
        if (src.size() < active) {
            out.push_back(std::string(blockName(b)) + " has fewer slots than active UAVs");
            continue;
        }
        const auto bounds = blockBounds(cfg, b);
        for (std::size_t i = 0; i < active; ++i) {
            if (!inside(src[i], bounds)) {
                out.push_back(std::string("C1-C5: ") + blockName(b) + "[" + std::to_string(i) + "] out of bounds");
            }
        }
    }
    if (static_cast<int>(sol.assign.size()) != cfg.relayedCount()) {
        out.emplace_back("C6: assignment length differs from M");
    } else {
        for (int r : sol.assign) {
            if (r < 0 || r >= n) {
                out.emplace_back("C6: assignment references an inactive UAV");
                break;
            }
        }
    }
    if (sol.uav_chan.size() < active) {
        out.emplace_back("C7: fewer UAV channels than active UAVs");
    } else {
        for (std::size_t i = 0; i < active; ++i) {
            if (sol.uav_chan[i] < 0 || sol.uav_chan[i] >= cfg.u_channels) {
                out.emplace_back("C7: UAV channel out of range");
                break;
            }
        }
    }
    if (static_cast<int>(sol.direct_chan.size()) != cfg.directCount()) {
        out.emplace_back("C8: direct channel length differs from K");
    } else {
        for (int c : sol.direct_chan) {
            if (c < 0 || c >= cfg.u_channels) {
                out.emplace_back("C8: direct channel out of range");
                break;
            }
        }
    }
    return out;
}

radio::Placement toPlacement(const Solution& sol, const ScenarioConfig&)
{
    radio::Placement pl;
    const auto n = static_cast<std::size_t>(sol.n_active);
    pl.uav_xyz.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pl.uav_xyz.push_back({sol.x[i], sol.y[i], sol.z[i]});
    pl.uav_tx_w.assign(sol.p.begin(), sol.p.begin() + static_cast<std::ptrdiff_t>(n));
    pl.assignment = sol.assign;
    pl.uav_channel.assign(sol.uav_chan.begin(), sol.uav_chan.begin() + static_cast<std::ptrdiff_t>(n));
    pl.direct_channel = sol.direct_chan;
    return pl;
}

energy::FlightPlan toFlightPlan(const Solution& sol, const ScenarioConfig& cfg)
{
    energy::FlightPlan plan;
    const auto n = static_cast<std::size_t>(sol.n_active);
    plan.origin_xyz = cfg.origin();
    for (std::size_t i = 0; i < n; ++i) plan.dest_xyz.push_back({sol.x[i], sol.y[i], sol.z[i]});
    plan.speed_m_s.assign(sol.v.begin(), sol.v.begin() + static_cast<std::ptrdiff_t>(n));
    return plan;
}

ObjectiveVector penalize(ObjectiveVector raw)
{
    raw.neg_f1 += kTimeSpreadPenalty[0];
    raw.f2 += kTimeSpreadPenalty[1];
    raw.f3 += kTimeSpreadPenalty[2];
    raw.feasible = false;
    return raw;
}

ObjectiveVector rawObjectives(const Solution& sol, const ScenarioConfig& cfg)
{
    if (auto errors = checkSolution(sol, cfg); !errors.empty()) {
        throw std::logic_error("evaluate: solution violates hard constraints: " + errors.front());
    }
    const auto plan = toFlightPlan(sol, cfg);
    ObjectiveVector out;
    out.neg_f1 = -radio::networkCapacity(toPlacement(sol, cfg), cfg);
    out.f2 = static_cast<double>(sol.n_active);
    out.f3 = energy::averageFlightEnergy(plan, cfg.energy);
    out.feasible = energy::flightTimeSpread(plan) <= cfg.t_th_s;
    return out;
}

ObjectiveVector evaluate(const Solution& sol, const ScenarioConfig& cfg)
{
    const auto raw = rawObjectives(sol, cfg);
    return raw.feasible ? raw : penalize(raw);
}

} // namespace skyrelay
