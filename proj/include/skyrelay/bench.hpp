#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "skyrelay/scenario.hpp"
#include "skyrelay/solvers.hpp"

namespace skyrelay::bench {

enum class Algo { nsga3fdu, nsga3, nsga2, wsga, ud, rd };

inline constexpr std::array<Algo, 6> kAlgos = {Algo::nsga3fdu, Algo::nsga3, Algo::nsga2,
                                               Algo::wsga,     Algo::ud,    Algo::rd};

std::string algoName(Algo a);
/// Throws std::invalid_argument for unknown names.
Algo parseAlgo(const std::string& name);

/// Objective names in export order.
inline constexpr std::array<const char*, 3> kObjectiveNames = {"f1_bps", "f2", "f3_j"};

struct TrialReport {
    Algo algo = Algo::nsga3fdu;
    int trial = 0;
    std::uint64_t trial_seed = 0;
    std::vector<solvers::Individual> final_front;
    /// Indexed like solvers::kStrategies.
    std::array<std::size_t, 3> pick_index{};
    std::array<ObjectiveVector, 3> picks{};
    double wall_time_s = 0.0;
};

/// One solver run with the given seed. UD and RD return a single individual.
solvers::SolverResult runAlgo(const ScenarioConfig& cfg, const solvers::RunConfig& rc, Algo algo);

/// Pool size: SKYRELAY_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned threadLimit();

/// Trial i runs with seed rc.seed + i. Reports come back in trial order and
/// do not depend on the number of worker threads. threads = 0 means
/// threadLimit().
std::vector<TrialReport> runTrials(const ScenarioConfig& cfg, const solvers::RunConfig& rc, Algo algo, int n_trials,
                                   unsigned threads = 0);

/// Fills picks and pick_index from the front.
void choosePicks(TrialReport& report);

/// A trial counts as feasible when every front member is feasible with f1 > 0.
bool trialFeasible(const TrialReport& report);

struct Summary {
    double mean = 0.0;
    double std = 0.0;  ///< population convention
    double max = 0.0;
    double min = 0.0;

    friend bool operator==(const Summary&, const Summary&) = default;
};

/// Population mean / std / max / min. Throws DomainError on empty input.
Summary summarize(std::span<const double> values);

struct RunStats {
    std::string algo;
    /// [strategy][objective], raw objective values (f1 positive).
    std::array<std::array<Summary, 3>, 3> by_strategy{};
    /// Summary of the per-trial 0/1 feasibility indicator; mean is the rate.
    Summary feasibility;

    double feasibilityRate() const { return feasibility.mean; }

    friend bool operator==(const RunStats&, const RunStats&) = default;
};

/// Throws DomainError on an empty report list or mixed algorithms.
RunStats aggregateStats(std::span<const TrialReport> reports);

/// Shortest decimal that parses back to the same double.
std::string formatNumber(double v);

std::string statsCsv(std::span<const RunStats> stats);
/// Inverse of statsCsv. Throws std::invalid_argument on malformed input.
std::vector<RunStats> parseStatsCsv(const std::string& text);

/// Writes stats.csv, front_<algo>_<trial>.csv, pick_<strategy>_<trial>.json
/// and manifest.json into out_dir (created if missing). Throws IoError.
void exportResults(std::span<const TrialReport> reports, const RunStats& stats, const std::filesystem::path& out_dir,
                   const ScenarioConfig& cfg, const solvers::RunConfig& rc);

std::string frontCsv(const std::vector<solvers::Individual>& front);
std::vector<ObjectiveVector> parseFrontCsv(const std::string& text);

/// Deployment record of one solution: active UAVs, assignment and channels.
std::string solutionRecordJson(const Solution& sol, const ObjectiveVector& obj, const std::string& algo,
                               const std::string& strategy, int trial);
/// Reads back the solution (active slots only) and its objectives.
std::pair<Solution, ObjectiveVector> parseSolutionRecord(const std::string& text);

/// Rebuilds reports (fronts and picks only) from every front_*.csv in dir,
/// grouped per algorithm in algorithm then trial order.
std::vector<std::vector<TrialReport>> loadReports(const std::filesystem::path& dir);

std::string readFile(const std::filesystem::path& path);
void writeFile(const std::filesystem::path& path, const std::string& text);

} // namespace skyrelay::bench
