#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "skyrelay/encoding.hpp"
#include "skyrelay/moea.hpp"
#include "skyrelay/operators.hpp"
#include "skyrelay/scenario.hpp"

namespace skyrelay::solvers {

/// SBX / polynomial-mutation settings. A non-positive pm means 1/D with D
/// the padded continuous dimension.
struct Variation {
    double pc = 1.0;
    double eta_c = 20.0;
    double pm = -1.0;
    double eta_m = 20.0;
};

struct RunConfig {
    int pop = 20;
    int max_iters = 200;
    double sigma1 = 0.2;
    double sigma2 = 0.6;
    double p_in = 0.5;
    std::uint64_t seed = 1;
    Variation variation;
    int ref_divisions = 5;
    bool keep_history = false;
};

/// Throws std::invalid_argument naming the first violated bound.
void validateRunConfig(const RunConfig& rc);

struct Individual {
    Solution genome;
    ObjectiveVector objectives;
    int rank = 0;
};

struct SolverResult {
    std::vector<Individual> final_front;
    /// First-front objectives after each generation, when requested.
    std::vector<std::vector<ObjectiveVector>> history;
    double wall_time_s = 0.0;
    std::uint64_t seed = 0;
};

/// Called once per generation with every freshly evaluated offspring.
using OffspringObserver = std::function<void(int generation, std::span<const Individual> offspring)>;

/// NSGA-III with flexible dimension, discrete-part learning and UAV-count
/// adjustment. Each generation merges parents, learned offspring and
/// count-adjusted offspring (3 * pop) before reference-point selection.
SolverResult nsga3fdu(const ScenarioConfig& cfg, const RunConfig& rc, const OffspringObserver& observer = {});

/// Conventional NSGA-III: discrete genes mutate by uniform resampling.
SolverResult nsga3Plain(const ScenarioConfig& cfg, const RunConfig& rc, const OffspringObserver& observer = {});

/// NSGA-II: same variation as nsga3Plain, crowding-distance survival.
SolverResult nsga2(const ScenarioConfig& cfg, const RunConfig& rc, const OffspringObserver& observer = {});

/// Generational GA on a normalized weighted sum of the three objectives.
/// Returns the best individual ever evaluated as a one-element front.
SolverResult weightedSumGA(const ScenarioConfig& cfg, const RunConfig& rc, std::array<double, 3> weights = {1, 1, 1});

/// Uniform deployment: (N_max + N_min) / 2 UAVs on a centered grid at mid
/// altitude and full power; speeds, channels and assignment random.
Individual udBaseline(const ScenarioConfig& cfg, Rng& rng);
/// Random deployment of every decision variable.
Individual rdBaseline(const ScenarioConfig& cfg, Rng& rng);

/// Horizontal grid positions used by udBaseline.
std::vector<Vec2> uniformGrid(const ScenarioConfig& cfg, int n);

enum class Strategy { max_net_cap, min_uav, min_ave_energy };

inline constexpr std::array<Strategy, 3> kStrategies = {Strategy::max_net_cap, Strategy::min_uav,
                                                        Strategy::min_ave_energy};

std::string strategyName(Strategy s);
/// Accepts "maxnetcap", "minuav", "minaveenergy" (case-insensitive).
Strategy parseStrategy(const std::string& name);

/// Index of the decision-maker's pick within the front.
std::size_t pickIndex(std::span<const ObjectiveVector> front, Strategy strategy);
const Individual& pickStrategy(std::span<const Individual> front, Strategy strategy);

/// Uniform integer resampling of the discrete genes at per-gene rate pm.
/// The UAV count resamples within [N_min, N_max]; assignments that would
/// dangle are redrawn.
void resampleDiscrete(Solution& sol, const ScenarioConfig& cfg, double pm, Rng& rng);

} // namespace skyrelay::solvers
