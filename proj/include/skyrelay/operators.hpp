#pragma once

#include "skyrelay/encoding.hpp"
#include "skyrelay/rng.hpp"
#include "skyrelay/scenario.hpp"

namespace skyrelay::solvers {

/// UAV count, pair assignment and channel allocation of a solution.
struct DiscretePart {
    int n_active = 0;
    std::vector<int> assign;
    std::vector<int> uav_chan;  ///< padded to N_max
    std::vector<int> direct_chan;

    friend bool operator==(const DiscretePart&, const DiscretePart&) = default;
};

DiscretePart discretePart(const Solution& sol);
void setDiscretePart(Solution& sol, const DiscretePart& part);

/// Uniform UAV count in [N_min, N_max], then a random discrete part for it.
DiscretePart randomSearchOperator(const ScenarioConfig& cfg, Rng& rng);

/// Random assignment over [0, n) and random channels for a fixed UAV count.
DiscretePart randomAssignment(const ScenarioConfig& cfg, int n, Rng& rng);

enum class LearningBranch { restart, keep, copy_best };

/// Branch taken for a draw r in [0, 1).
LearningBranch learningBranch(double r, double sigma1, double sigma2);

/// Updates the discrete part: restart it, keep it, or copy the donor's
/// (including its UAV count). The continuous part is never touched.
Solution probabilisticLearningOperator(Solution sol, const Solution& best, double sigma1, double sigma2,
                                       const ScenarioConfig& cfg, Rng& rng);
/// Same with the branch draw supplied by the caller.
Solution applyLearningBranch(Solution sol, const Solution& best, LearningBranch branch, const ScenarioConfig& cfg,
                             Rng& rng);

/// Reverse walk at the bounds, otherwise +1 with probability p_in, else -1.
int uavNumberAdjust(int n, const ScenarioConfig& cfg, double p_in, Rng& rng);

} // namespace skyrelay::solvers
