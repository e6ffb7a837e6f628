#include "skyrelay/operators.hpp"

#include <stdexcept>

namespace skyrelay::solvers {

DiscretePart discretePart(const Solution& sol)
{
    return {sol.n_active, sol.assign, sol.uav_chan, sol.direct_chan};
}

void setDiscretePart(Solution& sol, const DiscretePart& part)
{
    sol.n_active = part.n_active;
    sol.assign = part.assign;
    sol.uav_chan = part.uav_chan;
    sol.direct_chan = part.direct_chan;
}

DiscretePart randomAssignment(const ScenarioConfig& cfg, int n, Rng& rng)
{
    if (n < 1 || n > cfg.n_max) {
        throw std::invalid_argument("randomAssignment: UAV count out of range");
    }
    DiscretePart out;
    out.n_active = n;
    out.assign.resize(static_cast<std::size_t>(cfg.relayedCount()));
    for (auto& a : out.assign) a = rng.randint(0, n - 1);
    // Channels for the N active UAVs then the K direct pairs; auxiliary UAV
    // slots are padded afterwards.
    out.uav_chan.resize(static_cast<std::size_t>(cfg.n_max));
    for (int i = 0; i < n; ++i) out.uav_chan[static_cast<std::size_t>(i)] = rng.randint(0, cfg.u_channels - 1);
    out.direct_chan.resize(static_cast<std::size_t>(cfg.directCount()));
    for (auto& c : out.direct_chan) c = rng.randint(0, cfg.u_channels - 1);
    for (int i = n; i < cfg.n_max; ++i) out.uav_chan[static_cast<std::size_t>(i)] = rng.randint(0, cfg.u_channels - 1);
    return out;
}

DiscretePart randomSearchOperator(const ScenarioConfig& cfg, Rng& rng)
{
    const int n = rng.randint(cfg.n_min, cfg.n_max);
    return randomAssignment(cfg, n, rng);
}

LearningBranch learningBranch(double r, double sigma1, double sigma2)
{
    if (r < sigma1) return LearningBranch::restart;
    if (r < sigma2) return LearningBranch::keep;
    return LearningBranch::copy_best;
}

Solution applyLearningBranch(Solution sol, const Solution& best, LearningBranch branch, const ScenarioConfig& cfg,
                             Rng& rng)
{
    switch (branch) {
    case LearningBranch::restart:
        setDiscretePart(sol, randomSearchOperator(cfg, rng));
        break;
    case LearningBranch::keep:
        break;
    case LearningBranch::copy_best:
        // The donor's assignment indexes its own UAVs, so its count comes along.
        setDiscretePart(sol, discretePart(best));
        break;
    }
    return sol;
}

Solution probabilisticLearningOperator(Solution sol, const Solution& best, double sigma1, double sigma2,
                                       const ScenarioConfig& cfg, Rng& rng)
{
    const auto branch = learningBranch(rng.uniform01(), sigma1, sigma2);
    return applyLearningBranch(std::move(sol), best, branch, cfg, rng);
}

int uavNumberAdjust(int n, const ScenarioConfig& cfg, double p_in, Rng& rng)
{
    if (n < cfg.n_min || n > cfg.n_max) {
        throw std::invalid_argument("uavNumberAdjust: UAV count outside [N_min, N_max]");
    }
    if (cfg.n_min == cfg.n_max) return n;
    if (n == cfg.n_max) return cfg.n_max - 1;
    if (n == cfg.n_min) return cfg.n_min + 1;
    return rng.uniform01() < p_in ? n + 1 : n - 1;
}

} // namespace skyrelay::solvers
