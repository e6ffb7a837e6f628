#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "skyrelay/encoding.hpp"
#include "skyrelay/rng.hpp"

namespace skyrelay::moea {

inline constexpr std::size_t kObjectives = 3;
using Point = std::array<double, kObjectives>;

/// Pareto dominance for minimization.
bool dominates(const Point& a, const Point& b);
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Partitions indices into non-domination levels, best first. Each level
/// lists its members in ascending index order.
std::vector<std::vector<std::size_t>> fastNonDominatedSort(std::span<const Point> points);

/// Rank (0 = first front) of every point.
std::vector<int> nonDominationRanks(std::span<const Point> points);

struct ReferencePointSet {
    std::vector<Point> points;
    int divisions = 0;
};

/// Das-Dennis simplex lattice with the given number of divisions.
ReferencePointSet dasDennisPoints(int divisions);

/// NSGA-III environmental selection. Returns `target` distinct indices.
std::vector<std::size_t> nsga3Select(std::span<const Point> points, std::size_t target, const ReferencePointSet& refs,
                                     Rng& rng);

/// Crowding distance of each member of `front` (same order). Boundary members
/// get infinity.
std::vector<double> crowdingDistance(std::span<const Point> points, std::span<const std::size_t> front);

/// NSGA-II environmental selection. Returns `target` distinct indices.
std::vector<std::size_t> crowdingSelect(std::span<const Point> points, std::size_t target);

struct Bounds {
    std::span<const double> lower;
    std::span<const double> upper;
};

/// Simulated binary crossover with bounded spread; children are clamped.
std::pair<std::vector<double>, std::vector<double>> sbx(std::span<const double> p1, std::span<const double> p2,
                                                        Bounds bounds, double eta_c, double pc, Rng& rng);

/// Polynomial mutation applied to each gene with probability pm.
std::vector<double> polyMutation(std::vector<double> x, Bounds bounds, double eta_m, double pm, Rng& rng);

} // namespace skyrelay::moea
