#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "skyrelay/energy.hpp"
#include "skyrelay/radio.hpp"
#include "skyrelay/rng.hpp"
#include "skyrelay/scenario.hpp"

namespace skyrelay {

/// One candidate schedule. Continuous arrays and uav_chan are padded to
/// N_max slots; only slots [0, n_active) are read by evaluation, the rest are
/// auxiliary genes kept in bounds so variation stays well defined.
struct Solution {
    std::vector<double> x, y, z;  ///< m
    std::vector<double> p;        ///< W
    std::vector<double> v;        ///< m/s
    std::vector<int> assign;      ///< length M, values in [0, n_active)
    std::vector<int> uav_chan;    ///< values in [0, U)
    std::vector<int> direct_chan; ///< length K, values in [0, U)
    int n_active = 0;

    friend bool operator==(const Solution&, const Solution&) = default;
};

/// Minimization target (-f1, f2, f3). When feasible is false every numeric
/// component already carries its penalty.
struct ObjectiveVector {
    double neg_f1 = 0.0;
    double f2 = 0.0;
    double f3 = 0.0;
    bool feasible = true;

    double f1() const { return -neg_f1; }
    std::array<double, 3> values() const { return {neg_f1, f2, f3}; }

    friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

/// Penalty added to each component when the arrival-time spread exceeds T_th.
inline constexpr std::array<double, 3> kTimeSpreadPenalty = {1e7, 8.0, 1e6};

/// Number of continuous genes: five blocks (x, y, z, p, v) of N_max slots.
int continuousDimension(const ScenarioConfig& cfg);

struct GeneBounds {
    std::vector<double> lower;
    std::vector<double> upper;
};
GeneBounds continuousBounds(const ScenarioConfig& cfg);

/// Flattens the padded continuous part as x | y | z | p | v.
std::vector<double> continuousGenes(const Solution& sol);
void setContinuousGenes(Solution& sol, std::span<const double> genes);

Solution randomSolution(const ScenarioConfig& cfg, Rng& rng);

/// Resamples every out-of-bounds continuous slot uniformly inside its bounds.
Solution repairContinuous(Solution sol, const ScenarioConfig& cfg, Rng& rng);

/// Extends every array to N_max slots with random in-bounds auxiliary genes.
Solution padSolution(Solution sol, const ScenarioConfig& cfg, Rng& rng);

/// Lists violations of the hard constraints on the active part.
std::vector<std::string> checkSolution(const Solution& sol, const ScenarioConfig& cfg);

radio::Placement toPlacement(const Solution& sol, const ScenarioConfig& cfg);
energy::FlightPlan toFlightPlan(const Solution& sol, const ScenarioConfig& cfg);

ObjectiveVector penalize(ObjectiveVector raw);

/// Objectives without the time-spread penalty (feasible flag still set).
ObjectiveVector rawObjectives(const Solution& sol, const ScenarioConfig& cfg);

/// Full objective pipeline. Throws std::logic_error if the solution breaks a
/// hard constraint; those are repaired before evaluation.
ObjectiveVector evaluate(const Solution& sol, const ScenarioConfig& cfg);

} // namespace skyrelay
