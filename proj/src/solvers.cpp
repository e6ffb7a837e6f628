#include "skyrelay/solvers.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace skyrelay::solvers {

namespace {

enum class Survival { reference_points, crowding };
enum class DiscreteStep { fdu, resample };

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<moea::Point> pointsOf(std::span<const Individual> pop)
{
    std::vector<moea::Point> out;
    out.reserve(pop.size());
    for (const auto& ind : pop) out.push_back(ind.objectives.values());
    return out;
}

void assignRanks(std::vector<Individual>& pop)
{
    const auto pts = pointsOf(pop);
    const auto ranks = moea::nonDominationRanks(pts);
    for (std::size_t i = 0; i < pop.size(); ++i) pop[i].rank = ranks[i];
}

std::vector<Individual> firstFront(const std::vector<Individual>& pop)
{
    const auto pts = pointsOf(pop);
    const auto fronts = moea::fastNonDominatedSort(pts);
    std::vector<Individual> out;
    for (std::size_t i : fronts.front()) {
        out.push_back(pop[i]);
        out.back().rank = 0;
    }
    return out;
}

std::vector<ObjectiveVector> objectivesOf(const std::vector<Individual>& pop)
{
    std::vector<ObjectiveVector> out;
    for (const auto& ind : pop) out.push_back(ind.objectives);
    return out;
}

Individual makeIndividual(Solution sol, const ScenarioConfig& cfg)
{
    Individual ind;
    ind.objectives = evaluate(sol, cfg);
    ind.genome = std::move(sol);
    return ind;
}

double mutationRate(const Variation& v, const ScenarioConfig& cfg)
{
    return v.pm > 0.0 ? v.pm : 1.0 / continuousDimension(cfg);
}

std::vector<std::size_t> shuffled(std::size_t n, Rng& rng)
{
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.randint(0, static_cast<int>(i) - 1));
        std::swap(idx[i - 1], idx[j]);
    }
    return idx;
}

// SBX + PM on the continuous part of two parents. Children inherit the
// discrete part of the parent in the same position.
std::pair<Solution, Solution> crossPair(const Solution& a, const Solution& b, const GeneBounds& bounds,
                                        const Variation& var, double pm, const ScenarioConfig& cfg, Rng& rng)
{
    const moea::Bounds bnd{bounds.lower, bounds.upper};
    auto [g1, g2] = moea::sbx(continuousGenes(a), continuousGenes(b), bnd, var.eta_c, var.pc, rng);
    g1 = moea::polyMutation(std::move(g1), bnd, var.eta_m, pm, rng);
    g2 = moea::polyMutation(std::move(g2), bnd, var.eta_m, pm, rng);
    Solution c1 = a;
    Solution c2 = b;
    setContinuousGenes(c1, g1);
    setContinuousGenes(c2, g2);
    return {repairContinuous(std::move(c1), cfg, rng), repairContinuous(std::move(c2), cfg, rng)};
}

// Pop children from a random permutation of the parents, adjacent pairing.
std::vector<Solution> variedChildren(const std::vector<Individual>& parents, const GeneBounds& bounds,
                                     const Variation& var, double pm, const ScenarioConfig& cfg, Rng& rng)
{
    const auto order = shuffled(parents.size(), rng);
    std::vector<Solution> children;
    children.reserve(parents.size());
    for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
        auto [c1, c2] = crossPair(parents[order[i]].genome, parents[order[i + 1]].genome, bounds, var, pm, cfg, rng);
        children.push_back(std::move(c1));
        children.push_back(std::move(c2));
    }
    return children;
}

std::vector<Individual> initialPopulation(const ScenarioConfig& cfg, const RunConfig& rc, Rng& rng)
{
    std::vector<Individual> pop;
    pop.reserve(static_cast<std::size_t>(rc.pop));
    for (int i = 0; i < rc.pop; ++i) {
        pop.push_back(makeIndividual(padSolution(randomSolution(cfg, rng), cfg, rng), cfg));
    }
    assignRanks(pop);
    return pop;
}

SolverResult runGenerational(const ScenarioConfig& cfg, const RunConfig& rc, Survival survival, DiscreteStep step,
                             const OffspringObserver& observer)
{
    validateScenario(cfg);
    validateRunConfig(rc);
    const auto start = Clock::now();
    Rng rng(rc.seed);
    const auto bounds = continuousBounds(cfg);
    const double pm = mutationRate(rc.variation, cfg);
    const auto refs = moea::dasDennisPoints(rc.ref_divisions);

    SolverResult result;
    result.seed = rc.seed;
    auto pop = initialPopulation(cfg, rc, rng);

    for (int gen = 1; gen <= rc.max_iters; ++gen) {
        std::vector<std::size_t> leaders;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            if (pop[i].rank == 0) leaders.push_back(i);
        }

        auto children = variedChildren(pop, bounds, rc.variation, pm, cfg, rng);
        std::vector<Individual> offspring;
        offspring.reserve(children.size() * 2);

        if (step == DiscreteStep::fdu) {
            std::vector<Solution> adjusted;
            adjusted.reserve(children.size());
            for (auto& child : children) {
                // Q' starts as a copy of the varied child, before learning.
                Solution alt = child;
                const auto& best =
                    pop[leaders[static_cast<std::size_t>(rng.randint(0, static_cast<int>(leaders.size()) - 1))]];
                child = probabilisticLearningOperator(std::move(child), best.genome, rc.sigma1, rc.sigma2, cfg, rng);
                const int n = uavNumberAdjust(alt.n_active, cfg, rc.p_in, rng);
                setDiscretePart(alt, randomAssignment(cfg, n, rng));
                adjusted.push_back(std::move(alt));
            }
            for (auto& s : children) offspring.push_back(makeIndividual(std::move(s), cfg));
            for (auto& s : adjusted) offspring.push_back(makeIndividual(std::move(s), cfg));
        } else {
            for (auto& child : children) {
                resampleDiscrete(child, cfg, pm, rng);
                offspring.push_back(makeIndividual(std::move(child), cfg));
            }
        }

        if (observer) observer(gen, offspring);

        std::vector<Individual> merged = std::move(pop);
        merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                      std::make_move_iterator(offspring.end()));
        const auto pts = pointsOf(merged);
        const auto target = static_cast<std::size_t>(rc.pop);
        const auto keep = survival == Survival::reference_points ? moea::nsga3Select(pts, target, refs, rng)
                                                                 : moea::crowdingSelect(pts, target);
        pop.clear();
        for (std::size_t i : keep) pop.push_back(std::move(merged[i]));
        assignRanks(pop);

        if (rc.keep_history) result.history.push_back(objectivesOf(firstFront(pop)));
    }

    result.final_front = firstFront(pop);
    result.wall_time_s = elapsed(start);
    return result;
}

Individual& tournament(std::vector<Individual>& pop, const std::vector<double>& fitness, Rng& rng)
{
    const auto a = static_cast<std::size_t>(rng.randint(0, static_cast<int>(pop.size()) - 1));
    const auto b = static_cast<std::size_t>(rng.randint(0, static_cast<int>(pop.size()) - 1));
    return fitness[a] <= fitness[b] ? pop[a] : pop[b];
}

} // namespace

void validateRunConfig(const RunConfig& rc)
{
    if (rc.pop < 4 || rc.pop % 2 != 0) throw std::invalid_argument("pop must be even and >= 4");
    if (rc.max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
    if (!(0.0 <= rc.sigma1 && rc.sigma1 <= rc.sigma2 && rc.sigma2 <= 1.0)) {
        throw std::invalid_argument("require 0 <= sigma1 <= sigma2 <= 1");
    }
    if (!(rc.p_in > 0.0 && rc.p_in < 1.0)) throw std::invalid_argument("p_in must lie in (0, 1)");
    if (rc.ref_divisions < 1) throw std::invalid_argument("ref_divisions must be >= 1");
    if (!(rc.variation.pc >= 0.0 && rc.variation.pc <= 1.0)) throw std::invalid_argument("pc must lie in [0, 1]");
    if (rc.variation.pm > 1.0) throw std::invalid_argument("pm must be <= 1");
    if (!(rc.variation.eta_c >= 0.0) || !(rc.variation.eta_m >= 0.0)) {
        throw std::invalid_argument("distribution indices must be >= 0");
    }
}

void resampleDiscrete(Solution& sol, const ScenarioConfig& cfg, double pm, Rng& rng)
{
    if (rng.uniform01() < pm) sol.n_active = rng.randint(cfg.n_min, cfg.n_max);
    for (auto& a : sol.assign) {
        if (a >= sol.n_active || rng.uniform01() < pm) a = rng.randint(0, sol.n_active - 1);
    }
    for (auto& c : sol.uav_chan) {
        if (rng.uniform01() < pm) c = rng.randint(0, cfg.u_channels - 1);
    }
    for (auto& c : sol.direct_chan) {
        if (rng.uniform01() < pm) c = rng.randint(0, cfg.u_channels - 1);
    }
}

SolverResult nsga3fdu(const ScenarioConfig& cfg, const RunConfig& rc, const OffspringObserver& observer)
{
    return runGenerational(cfg, rc, Survival::reference_points, DiscreteStep::fdu, observer);
}

SolverResult nsga3Plain(const ScenarioConfig& cfg, const RunConfig& rc, const OffspringObserver& observer)
{
    return runGenerational(cfg, rc, Survival::reference_points, DiscreteStep::resample, observer);
}

SolverResult nsga2(const ScenarioConfig& cfg, const RunConfig& rc, const OffspringObserver& observer)
{
    return runGenerational(cfg, rc, Survival::crowding, DiscreteStep::resample, observer);
}

SolverResult weightedSumGA(const ScenarioConfig& cfg, const RunConfig& rc, std::array<double, 3> weights)
{
    validateScenario(cfg);
    validateRunConfig(rc);
    if (std::any_of(weights.begin(), weights.end(), [](double w) { return w < 0.0; }) ||
        std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; })) {
        throw std::invalid_argument("weights must be non-negative and not all zero");
    }
    const auto start = Clock::now();
    Rng rng(rc.seed);
    const auto bounds = continuousBounds(cfg);
    const double pm = mutationRate(rc.variation, cfg);

    // Per-run scale from the uniform-deployment reference.
    const auto reference = udBaseline(cfg, rng).objectives.values();
    std::array<double, 3> scale{};
    for (std::size_t j = 0; j < 3; ++j) scale[j] = reference[j] != 0.0 ? std::abs(reference[j]) : 1.0;
    auto score = [&](const ObjectiveVector& o) {
        const auto v = o.values();
        double s = 0.0;
        for (std::size_t j = 0; j < 3; ++j) s += weights[j] * v[j] / scale[j];
        return s;
    };

    auto pop = initialPopulation(cfg, rc, rng);
    std::vector<double> fitness;
    Individual best = pop.front();
    double bestScore = std::numeric_limits<double>::infinity();
    auto track = [&](const std::vector<Individual>& generation) {
        fitness.clear();
        for (const auto& ind : generation) {
            fitness.push_back(score(ind.objectives));
            if (fitness.back() < bestScore) {
                bestScore = fitness.back();
                best = ind;
            }
        }
    };
    track(pop);

    for (int gen = 1; gen <= rc.max_iters; ++gen) {
        std::vector<Individual> next;
        next.reserve(pop.size());
        next.push_back(best);
        while (next.size() < pop.size()) {
            const auto& a = tournament(pop, fitness, rng);
            const auto& b = tournament(pop, fitness, rng);
            auto [c1, c2] = crossPair(a.genome, b.genome, bounds, rc.variation, pm, cfg, rng);
            resampleDiscrete(c1, cfg, pm, rng);
            next.push_back(makeIndividual(std::move(c1), cfg));
            if (next.size() < pop.size()) {
                resampleDiscrete(c2, cfg, pm, rng);
                next.push_back(makeIndividual(std::move(c2), cfg));
            }
        }
        pop = std::move(next);
        track(pop);
    }

    SolverResult result;
    result.seed = rc.seed;
    best.rank = 0;
    result.final_front.push_back(best);
    result.wall_time_s = elapsed(start);
    return result;
}

std::vector<Vec2> uniformGrid(const ScenarioConfig& cfg, int n)
{
    const int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    const double spacing = (cfg.l_max_m - cfg.l_min_m) / side;
    std::vector<Vec2> out;
    for (int row = 0; row < side && static_cast<int>(out.size()) < n; ++row) {
        for (int col = 0; col < side && static_cast<int>(out.size()) < n; ++col) {
            out.push_back({cfg.l_min_m + (col + 0.5) * spacing, cfg.l_min_m + (row + 0.5) * spacing});
        }
    }
    return out;
}

Individual udBaseline(const ScenarioConfig& cfg, Rng& rng)
{
    const int n = (cfg.n_max + cfg.n_min) / 2;
    Solution sol;
    for (const auto& p : uniformGrid(cfg, n)) {
        sol.x.push_back(p.x);
        sol.y.push_back(p.y);
        sol.z.push_back((cfg.z_max_m + cfg.z_min_m) / 2.0);
        sol.p.push_back(cfg.p_max_w);
        sol.v.push_back(rng.uniform(cfg.v_min_m_s, cfg.v_max_m_s));
    }
    setDiscretePart(sol, randomAssignment(cfg, n, rng));
    sol.uav_chan.resize(static_cast<std::size_t>(n));
    sol = padSolution(std::move(sol), cfg, rng);
    return makeIndividual(std::move(sol), cfg);
}

Individual rdBaseline(const ScenarioConfig& cfg, Rng& rng)
{
    return makeIndividual(randomSolution(cfg, rng), cfg);
}

std::string strategyName(Strategy s)
{
    switch (s) {
    case Strategy::max_net_cap: return "MaxNetCap";
    case Strategy::min_uav: return "MinUAV";
    case Strategy::min_ave_energy: return "MinAveEnergy";
    }
    return "unknown";
}

Strategy parseStrategy(const std::string& name)
{
    std::string lower;
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "maxnetcap") return Strategy::max_net_cap;
    if (lower == "minuav") return Strategy::min_uav;
    if (lower == "minaveenergy") return Strategy::min_ave_energy;
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

std::size_t pickIndex(std::span<const ObjectiveVector> front, Strategy strategy)
{
    if (front.empty()) {
        throw DomainError("pickStrategy: empty front");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < front.size(); ++i) {
        const auto& c = front[i];
        const auto& b = front[best];
        bool better = false;
        switch (strategy) {
        case Strategy::max_net_cap:
            better = c.f1() > b.f1();
            break;
        case Strategy::min_uav:
            better = c.f2 < b.f2 || (c.f2 == b.f2 && c.f1() > b.f1());
            break;
        case Strategy::min_ave_energy:
            better = c.f3 < b.f3 || (c.f3 == b.f3 && c.f1() > b.f1());
            break;
        }
        if (better) best = i;
    }
    return best;
}

const Individual& pickStrategy(std::span<const Individual> front, Strategy strategy)
{
    std::vector<ObjectiveVector> objs;
    objs.reserve(front.size());
    for (const auto& ind : front) objs.push_back(ind.objectives);
    return front[pickIndex(objs, strategy)];
}

} // namespace skyrelay::solvers
