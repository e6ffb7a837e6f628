#include "skyrelay/moea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace skyrelay::moea {

namespace {

constexpr double kAsfEpsilon = 1e-6;
constexpr double kInterceptFloor = 1e-10;

// Solves A x = rhs for a 3x3 system; nullopt when (near) singular.
std::optional<Point> solve3(std::array<Point, kObjectives> a, Point rhs)
{
    for (std::size_t col = 0; col < kObjectives; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < kObjectives; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (std::abs(a[pivot][col]) < 1e-12) return std::nullopt;
        std::swap(a[col], a[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t r = col + 1; r < kObjectives; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < kObjectives; ++c) a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    Point x{};
    for (std::size_t i = kObjectives; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t c = i + 1; c < kObjectives; ++c) s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

// Intercepts of the hyperplane through the extreme points of the translated
// set, falling back to the worst value per axis when degenerate.
Point intercepts(const std::vector<Point>& translated)
{
    std::array<Point, kObjectives> extremes{};
    for (std::size_t axis = 0; axis < kObjectives; ++axis) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& t : translated) {
            double asf = 0.0;
            for (std::size_t j = 0; j < kObjectives; ++j) {
                asf = std::max(asf, t[j] / (j == axis ? 1.0 : kAsfEpsilon));
            }
            if (asf < best) {
                best = asf;
                extremes[axis] = t;
            }
        }
    }

    Point worst{};
    for (const auto& t : translated) {
        for (std::size_t j = 0; j < kObjectives; ++j) worst[j] = std::max(worst[j], t[j]);
    }

    Point out{};
    bool usable = false;
    if (auto plane = solve3(extremes, {1.0, 1.0, 1.0})) {
        usable = true;
        for (std::size_t j = 0; j < kObjectives; ++j) {
            out[j] = 1.0 / (*plane)[j];
            if (!std::isfinite(out[j]) || out[j] <= kInterceptFloor) usable = false;
        }
    }
    if (!usable) out = worst;
    for (auto& a : out) {
        if (!(a > kInterceptFloor)) a = 1.0;
    }
    return out;
}

double perpendicularDistance(const Point& p, const Point& ref)
{
    double dot = 0.0;
    double norm2 = 0.0;
    for (std::size_t j = 0; j < kObjectives; ++j) {
        dot += p[j] * ref[j];
        norm2 += ref[j] * ref[j];
    }
    const double k = dot / norm2;
    double d2 = 0.0;
    for (std::size_t j = 0; j < kObjectives; ++j) {
        const double e = p[j] - k * ref[j];
        d2 += e * e;
    }
    return std::sqrt(d2);
}

// Splits sorted fronts into the ones admitted whole and the splitting front.
struct FrontSplit {
    std::vector<std::size_t> admitted;
    std::vector<std::size_t> last;  // empty when the fronts fit exactly
};

FrontSplit splitFronts(std::span<const Point> points, std::size_t target)
{
    if (target > points.size()) {
        throw std::invalid_argument("selection target exceeds population size");
    }
    FrontSplit out;
    for (auto& front : fastNonDominatedSort(points)) {
        if (out.admitted.size() == target) break;
        if (out.admitted.size() + front.size() <= target) {
            out.admitted.insert(out.admitted.end(), front.begin(), front.end());
        } else {
            out.last = std::move(front);
            break;
        }
    }
    return out;
}

} // namespace

bool dominates(const Point& a, const Point& b)
{
    bool strictly = false;
    for (std::size_t j = 0; j < kObjectives; ++j) {
        if (a[j] > b[j]) return false;
        if (a[j] < b[j]) strictly = true;
    }
    return strictly;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b)
{
    return dominates(a.values(), b.values());
}

std::vector<std::vector<std::size_t>> fastNonDominatedSort(std::span<const Point> points)
{
    const std::size_t n = points.size();
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<int> counter(n, 0);
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;

    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (dominates(points[p], points[q])) {
                dominated[p].push_back(q);
                ++counter[q];
            } else if (dominates(points[q], points[p])) {
                dominated[q].push_back(p);
                ++counter[p];
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (counter[p] == 0) current.push_back(p);
    }
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t p : current) {
            for (std::size_t q : dominated[p]) {
                if (--counter[q] == 0) next.push_back(q);
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<int> nonDominationRanks(std::span<const Point> points)
{
    std::vector<int> rank(points.size(), 0);
    const auto fronts = fastNonDominatedSort(points);
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        for (std::size_t i : fronts[f]) rank[i] = static_cast<int>(f);
    }
    return rank;
}

ReferencePointSet dasDennisPoints(int divisions)
{
    if (divisions < 1) {
        throw DomainError("dasDennisPoints: divisions must be >= 1");
    }
    ReferencePointSet out;
    out.divisions = divisions;
    const double p = divisions;
    for (int i = divisions; i >= 0; --i) {
        for (int j = divisions - i; j >= 0; --j) {
            const int k = divisions - i - j;
            out.points.push_back({i / p, j / p, k / p});
        }
    }
    return out;
}

std::vector<std::size_t> nsga3Select(std::span<const Point> points, std::size_t target, const ReferencePointSet& refs,
                                     Rng& rng)
{
    auto split = splitFronts(points, target);
    std::vector<std::size_t> chosen = std::move(split.admitted);
    if (split.last.empty()) return chosen;
    if (refs.points.empty()) {
        throw std::invalid_argument("nsga3Select: no reference points");
    }

    // Normalize over every candidate that reached the splitting front.
    std::vector<std::size_t> pool = chosen;
    pool.insert(pool.end(), split.last.begin(), split.last.end());

    Point ideal;
    ideal.fill(std::numeric_limits<double>::infinity());
    for (std::size_t i : pool) {
        for (std::size_t j = 0; j < kObjectives; ++j) ideal[j] = std::min(ideal[j], points[i][j]);
    }
    std::vector<Point> translated;
    translated.reserve(pool.size());
    for (std::size_t i : pool) {
        Point t;
        for (std::size_t j = 0; j < kObjectives; ++j) t[j] = points[i][j] - ideal[j];
        translated.push_back(t);
    }
    const Point scale = intercepts(translated);

    std::vector<std::size_t> niche(pool.size());
    std::vector<double> distance(pool.size());
    for (std::size_t s = 0; s < pool.size(); ++s) {
        Point normalized;
        for (std::size_t j = 0; j < kObjectives; ++j) normalized[j] = translated[s][j] / scale[j];
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < refs.points.size(); ++r) {
            const double d = perpendicularDistance(normalized, refs.points[r]);
            if (d < best) {
                best = d;
                niche[s] = r;
            }
        }
        distance[s] = best;
    }

    std::vector<int> count(refs.points.size(), 0);
    for (std::size_t s = 0; s < chosen.size(); ++s) ++count[niche[s]];

    // Positions (within pool) of splitting-front members still available.
    std::vector<std::vector<std::size_t>> waiting(refs.points.size());
    for (std::size_t s = chosen.size(); s < pool.size(); ++s) waiting[niche[s]].push_back(s);

    std::vector<bool> excluded(refs.points.size(), false);
    std::vector<std::size_t> minimal;
    while (chosen.size() < target) {
        int lowest = std::numeric_limits<int>::max();
        for (std::size_t r = 0; r < count.size(); ++r) {
            if (!excluded[r]) lowest = std::min(lowest, count[r]);
        }
        minimal.clear();
        for (std::size_t r = 0; r < count.size(); ++r) {
            if (!excluded[r] && count[r] == lowest) minimal.push_back(r);
        }
        const std::size_t r = minimal[static_cast<std::size_t>(rng.randint(0, static_cast<int>(minimal.size()) - 1))];
        auto& members = waiting[r];
        if (members.empty()) {
            excluded[r] = true;
            continue;
        }
        std::size_t pick = 0;
        if (count[r] == 0) {
            for (std::size_t i = 1; i < members.size(); ++i) {
                if (distance[members[i]] < distance[members[pick]]) pick = i;
            }
        } else {
            pick = static_cast<std::size_t>(rng.randint(0, static_cast<int>(members.size()) - 1));
        }
        chosen.push_back(pool[members[pick]]);
        members.erase(members.begin() + static_cast<std::ptrdiff_t>(pick));
        ++count[r];
    }
    return chosen;
}

std::vector<double> crowdingDistance(std::span<const Point> points, std::span<const std::size_t> front)
{
    const std::size_t n = front.size();
    std::vector<double> dist(n, 0.0);
    if (n == 0) return dist;
    std::vector<std::size_t> order(n);
    for (std::size_t j = 0; j < kObjectives; ++j) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return points[front[a]][j] < points[front[b]][j]; });
        const double lo = points[front[order.front()]][j];
        const double hi = points[front[order.back()]][j];
        dist[order.front()] = std::numeric_limits<double>::infinity();
        dist[order.back()] = std::numeric_limits<double>::infinity();
        if (!(hi > lo)) continue;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            dist[order[i]] += (points[front[order[i + 1]]][j] - points[front[order[i - 1]]][j]) / (hi - lo);
        }
    }
    return dist;
}

std::vector<std::size_t> crowdingSelect(std::span<const Point> points, std::size_t target)
{
    auto split = splitFronts(points, target);
    std::vector<std::size_t> chosen = std::move(split.admitted);
    if (split.last.empty()) return chosen;

    const auto dist = crowdingDistance(points, split.last);
    std::vector<std::size_t> order(split.last.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
    for (std::size_t i = 0; chosen.size() < target; ++i) chosen.push_back(split.last[order[i]]);
    return chosen;
}

std::pair<std::vector<double>, std::vector<double>> sbx(std::span<const double> p1, std::span<const double> p2,
                                                        Bounds bounds, double eta_c, double pc, Rng& rng)
{
    if (p1.size() != p2.size() || p1.size() != bounds.lower.size() || p1.size() != bounds.upper.size()) {
        throw std::invalid_argument("sbx: parent and bound lengths differ");
    }
    std::vector<double> c1(p1.begin(), p1.end());
    std::vector<double> c2(p2.begin(), p2.end());
    if (!(rng.uniform01() < pc)) return {c1, c2};

    const double expo = 1.0 / (eta_c + 1.0);
    auto spreadFactor = [&](double beta, double u) {
        const double alpha = 2.0 - std::pow(beta, -(eta_c + 1.0));
        if (u <= 1.0 / alpha) return std::pow(u * alpha, expo);
        return std::pow(1.0 / (2.0 - u * alpha), expo);
    };

    for (std::size_t i = 0; i < c1.size(); ++i) {
        if (rng.uniform01() > 0.5) continue;
        const double lo = bounds.lower[i];
        const double hi = bounds.upper[i];
        if (std::abs(p1[i] - p2[i]) <= 1e-14 || !(hi > lo)) continue;

        const double y1 = std::min(p1[i], p2[i]);
        const double y2 = std::max(p1[i], p2[i]);
        const double u = rng.uniform01();

        const double betaLow = 1.0 + 2.0 * (y1 - lo) / (y2 - y1);
        double a = 0.5 * ((y1 + y2) - spreadFactor(betaLow, u) * (y2 - y1));
        const double betaHigh = 1.0 + 2.0 * (hi - y2) / (y2 - y1);
        double b = 0.5 * ((y1 + y2) + spreadFactor(betaHigh, u) * (y2 - y1));
        a = std::clamp(a, lo, hi);
        b = std::clamp(b, lo, hi);
        if (rng.uniform01() <= 0.5) {
            c1[i] = b;
            c2[i] = a;
        } else {
            c1[i] = a;
            c2[i] = b;
        }
    }
    return {c1, c2};
}

std::vector<double> polyMutation(std::vector<double> x, Bounds bounds, double eta_m, double pm, Rng& rng)
{
    if (x.size() != bounds.lower.size() || x.size() != bounds.upper.size()) {
        throw std::invalid_argument("polyMutation: gene and bound lengths differ");
    }
    const double expo = 1.0 / (eta_m + 1.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(rng.uniform01() < pm)) continue;
        const double lo = bounds.lower[i];
        const double hi = bounds.upper[i];
        if (!(hi > lo)) continue;
        const double y = std::clamp(x[i], lo, hi);
        const double d1 = (y - lo) / (hi - lo);
        const double d2 = (hi - y) / (hi - lo);
        const double u = rng.uniform01();
        double dq = 0.0;
        if (u <= 0.5) {
            const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta_m + 1.0);
            dq = std::pow(val, expo) - 1.0;
        } else {
            const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta_m + 1.0);
            dq = 1.0 - std::pow(val, expo);
        }
        x[i] = std::clamp(y + dq * (hi - lo), lo, hi);
    }
    return x;
}

} // namespace skyrelay::moea
