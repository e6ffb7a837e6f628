#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skyrelay/bench.hpp"
#include "skyrelay/errors.hpp"
#include "skyrelay/radio.hpp"
#include "skyrelay/scenario.hpp"
#include "skyrelay/solvers.hpp"

namespace fs = std::filesystem;
using namespace skyrelay;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

// Bad input documents and option values map to the usage exit code.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void printStats(const bench::RunStats& st, int trials)
{
    std::printf("%s: %d trial(s), feasibility rate %.3f\n", st.algo.c_str(), trials, st.feasibilityRate());
    std::printf("  %-13s %14s %10s %14s\n", "strategy", "f1 [bps]", "f2", "f3 [J]");
    for (std::size_t s = 0; s < solvers::kStrategies.size(); ++s) {
        const auto& row = st.by_strategy[s];
        std::printf("  %-13s %14.6g %10.4g %14.6g\n", solvers::strategyName(solvers::kStrategies[s]).c_str(),
                    row[0].mean, row[1].mean, row[2].mean);
    }
}

std::string lowerName(solvers::Strategy s)
{
    std::string out;
    for (char c : solvers::strategyName(s)) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

int cmdGenScenario(int scale, std::uint64_t seed, const std::string& out)
{
    const auto cfg = genScenario(scale == 1 ? Scale::one : Scale::two, seed);
    saveScenario(cfg, out);
    std::printf("wrote %s (M=%d, K=%d, N in [%d, %d], U=%d)\n", out.c_str(), cfg.relayedCount(), cfg.directCount(),
                cfg.n_min, cfg.n_max, cfg.u_channels);
    return 0;
}

int cmdRun(const std::string& scenario, const std::string& algo_name, int trials, const solvers::RunConfig& rc,
           const std::string& out)
{
    const auto algo = bench::parseAlgo(algo_name);
    const auto cfg = loadScenario(scenario);
    const auto reports = bench::runTrials(cfg, rc, algo, trials);
    const auto stats = bench::aggregateStats(reports);
    bench::exportResults(reports, stats, out, cfg, rc);
    printStats(stats, trials);
    return 0;
}

int cmdStats(const std::string& in, const std::string& out)
{
    const auto groups = bench::loadReports(in);
    if (groups.empty()) throw UsageError("no front_<algo>_<trial>.csv files in " + in);
    std::vector<bench::RunStats> all;
    for (const auto& g : groups) {
        all.push_back(bench::aggregateStats(g));
        printStats(all.back(), static_cast<int>(g.size()));
    }
    bench::writeFile(out, bench::statsCsv(all));
    return 0;
}

int cmdPick(const std::string& in, const std::string& strategy, int trial)
{
    const auto s = solvers::parseStrategy(strategy);
    const auto path = fs::path(in) / ("pick_" + lowerName(s) + "_" + std::to_string(trial) + ".json");
    const auto text = bench::readFile(path);
    bench::parseSolutionRecord(text);
    std::cout << text;
    return 0;
}

int cmdEff(const std::string& in, const std::string& scenario)
{
    const auto cfg = loadScenario(scenario);
    const auto prefix = "pick_" + lowerName(solvers::Strategy::max_net_cap) + "_";
    std::vector<std::pair<int, fs::path>> picks;
    for (const auto& entry : fs::directory_iterator(in)) {
        const auto name = entry.path().filename().string();
        if (name.rfind(prefix, 0) != 0 || entry.path().extension() != ".json") continue;
        const auto stem = entry.path().stem().string().substr(prefix.size());
        try {
            picks.emplace_back(std::stoi(stem), entry.path());
        } catch (const std::exception&) {
            continue;
        }
    }
    if (picks.empty()) throw UsageError("no " + prefix + "<trial>.json files in " + in);
    std::sort(picks.begin(), picks.end());

    std::printf("%-6s %5s %16s %20s %18s %22s\n", "trial", "N", "capacity [bps]", "eff with UAVs [b/J]",
                "direct cap [bps]", "eff without UAVs [b/J]");
    double sum[4] = {0, 0, 0, 0};
    for (const auto& [trial, path] : picks) {
        const auto [sol, obj] = bench::parseSolutionRecord(bench::readFile(path));
        if (const auto errs = checkSolution(sol, cfg); !errs.empty()) {
            throw UsageError(path.string() + ": " + errs.front());
        }
        const auto pl = toPlacement(sol, cfg);
        const double cap = radio::networkCapacity(pl, cfg);
        // Without UAVs each relayed pair keeps the channel of its serving UAV.
        std::vector<int> relayed_channel;
        for (int a : sol.assign) relayed_channel.push_back(sol.uav_chan[static_cast<std::size_t>(a)]);
        const double direct = radio::directOnlyCapacity(cfg, relayed_channel, sol.direct_chan);
        const double eff_with = radio::commEnergyEfficiency(cap, pl, cfg, true);
        const double eff_without = radio::commEnergyEfficiency(direct, pl, cfg, false);
        std::printf("%-6d %5d %16.6g %20.6g %18.6g %22.6g\n", trial, sol.n_active, cap, eff_with, direct,
                    eff_without);
        sum[0] += cap;
        sum[1] += eff_with;
        sum[2] += direct;
        sum[3] += eff_without;
    }
    const double n = static_cast<double>(picks.size());
    std::printf("%-6s %5s %16.6g %20.6g %18.6g %22.6g\n", "mean", "", sum[0] / n, sum[1] / n, sum[2] / n,
                sum[3] / n);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"UAV-aided D2D relay network model and multi-objective deployment solver"};
    app.require_subcommand(1);

    int scale = 1;
    std::uint64_t seed = 1;
    std::string out;
    auto* gen = app.add_subcommand("gen-scenario", "Generate a reference scenario");
    gen->add_option("--scale", scale, "Scenario scale")->check(CLI::IsMember({1, 2}))->required();
    gen->add_option("--seed", seed, "Layout seed")->required();
    gen->add_option("--out", out, "Output scenario JSON")->required();

    std::string scenario;
    std::string algo;
    int trials = 30;
    solvers::RunConfig rc;
    auto* run = app.add_subcommand("run", "Run an algorithm over several trials and export results");
    run->add_option("--scenario", scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
    run->add_option("--algo", algo, "nsga3fdu | nsga3 | nsga2 | wsga | ud | rd")
        ->required()
        ->check(CLI::IsMember({"nsga3fdu", "nsga3", "nsga2", "wsga", "ud", "rd"}));
    run->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber)->capture_default_str();
    run->add_option("--pop", rc.pop, "Population size")->capture_default_str();
    run->add_option("--iters", rc.max_iters, "Generations")->check(CLI::NonNegativeNumber)->capture_default_str();
    run->add_option("--seed", rc.seed, "Base run seed; trial i uses seed + i")->capture_default_str();
    run->add_option("--out", out, "Output directory")->required();
    run->add_option("--p-in", rc.p_in, "Probability of adding a UAV in the count walk")->capture_default_str();
    run->add_option("--sigma1", rc.sigma1, "Restart threshold of the learning operator")->capture_default_str();
    run->add_option("--sigma2", rc.sigma2, "Keep threshold of the learning operator")->capture_default_str();

    std::string in;
    auto* stats = app.add_subcommand("stats", "Recompute statistics from exported fronts");
    stats->add_option("--in", in, "Result directory")->required()->check(CLI::ExistingDirectory);
    stats->add_option("--out", out, "Output CSV")->required();

    std::string strategy;
    int trial = 0;
    auto* pick = app.add_subcommand("pick", "Print a trial's picked deployment");
    pick->add_option("--in", in, "Result directory")->required()->check(CLI::ExistingDirectory);
    pick->add_option("--strategy", strategy, "maxnetcap | minuav | minaveenergy")->required();
    pick->add_option("--trial", trial, "Trial index (zero-based)")->required()->check(CLI::NonNegativeNumber);

    auto* eff = app.add_subcommand("eff", "Communication energy efficiency with and without UAVs");
    eff->add_option("--in", in, "Result directory")->required()->check(CLI::ExistingDirectory);
    eff->add_option("--scenario", scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*gen) return cmdGenScenario(scale, seed, out);
        if (*run) return cmdRun(scenario, algo, trials, rc, out);
        if (*stats) return cmdStats(in, out);
        if (*pick) return cmdPick(in, strategy, trial);
        if (*eff) return cmdEff(in, scenario);
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}
