#include "skyrelay/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace skyrelay::bench {

using nlohmann::json;

namespace {

std::vector<std::string> splitCsvLine(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parseNumber(const std::string& s)
{
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        // from_chars rejects the spellings to_chars uses for non-finite values.
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    return v;
}

std::vector<std::string> nonEmptyLines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

std::array<double, 3> rawValues(const ObjectiveVector& o) { return {o.f1(), o.f2, o.f3}; }

} // namespace

std::string algoName(Algo a)
{
    switch (a) {
    case Algo::nsga3fdu: return "nsga3fdu";
    case Algo::nsga3: return "nsga3";
    case Algo::nsga2: return "nsga2";
    case Algo::wsga: return "wsga";
    case Algo::ud: return "ud";
    case Algo::rd: return "rd";
    }
    return "unknown";
}

Algo parseAlgo(const std::string& name)
{
    for (Algo a : kAlgos) {
        if (algoName(a) == name) return a;
    }
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

solvers::SolverResult runAlgo(const ScenarioConfig& cfg, const solvers::RunConfig& rc, Algo algo)
{
    switch (algo) {
    case Algo::nsga3fdu: return solvers::nsga3fdu(cfg, rc);
    case Algo::nsga3: return solvers::nsga3Plain(cfg, rc);
    case Algo::nsga2: return solvers::nsga2(cfg, rc);
    case Algo::wsga: return solvers::weightedSumGA(cfg, rc);
    case Algo::ud:
    case Algo::rd: {
        validateScenario(cfg);
        const auto start = std::chrono::steady_clock::now();
        Rng rng(rc.seed);
        solvers::SolverResult res;
        res.seed = rc.seed;
        res.final_front.push_back(algo == Algo::ud ? solvers::udBaseline(cfg, rng) : solvers::rdBaseline(cfg, rng));
        res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return res;
    }
    }
    throw std::invalid_argument("unknown algorithm");
}

unsigned threadLimit()
{
    if (const char* env = std::getenv("SKYRELAY_THREADS")) {
        unsigned v = 0;
        const std::string s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void choosePicks(TrialReport& report)
{
    std::vector<ObjectiveVector> objs;
    objs.reserve(report.final_front.size());
    for (const auto& ind : report.final_front) objs.push_back(ind.objectives);
    for (std::size_t s = 0; s < solvers::kStrategies.size(); ++s) {
        report.pick_index[s] = solvers::pickIndex(objs, solvers::kStrategies[s]);
        report.picks[s] = objs[report.pick_index[s]];
    }
}

bool trialFeasible(const TrialReport& report)
{
    return !report.final_front.empty() &&
           std::all_of(report.final_front.begin(), report.final_front.end(), [](const solvers::Individual& ind) {
               return ind.objectives.feasible && ind.objectives.f1() > 0.0;
           });
}

std::vector<TrialReport> runTrials(const ScenarioConfig& cfg, const solvers::RunConfig& rc, Algo algo, int n_trials,
                                   unsigned threads)
{
    if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
    validateScenario(cfg);
    solvers::validateRunConfig(rc);
    if (threads == 0) threads = threadLimit();
    threads = std::min<unsigned>(threads, static_cast<unsigned>(n_trials));

    std::vector<TrialReport> reports(static_cast<std::size_t>(n_trials));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n_trials) return;
            try {
                auto trial_rc = rc;
                trial_rc.seed = rc.seed + static_cast<std::uint64_t>(i);
                auto res = runAlgo(cfg, trial_rc, algo);
                TrialReport rep;
                rep.algo = algo;
                rep.trial = i;
                rep.trial_seed = trial_rc.seed;
                rep.final_front = std::move(res.final_front);
                rep.wall_time_s = res.wall_time_s;
                choosePicks(rep);
                reports[static_cast<std::size_t>(i)] = std::move(rep);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(n_trials);
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return reports;
}

Summary summarize(std::span<const double> values)
{
    if (values.empty()) throw DomainError("summarize: no values");
    Summary s;
    double sum = 0.0;
    s.max = values.front();
    s.min = values.front();
    for (double v : values) {
        sum += v;
        s.max = std::max(s.max, v);
        s.min = std::min(s.min, v);
    }
    const auto n = static_cast<double>(values.size());
    s.mean = sum / n;
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(sq / n);
    // Rounding can push the mean a hair outside [min, max] for equal values.
    s.mean = std::clamp(s.mean, s.min, s.max);
    return s;
}

RunStats aggregateStats(std::span<const TrialReport> reports)
{
    if (reports.empty()) throw DomainError("aggregateStats: no reports");
    RunStats st;
    st.algo = algoName(reports.front().algo);
    for (const auto& r : reports) {
        if (r.algo != reports.front().algo) throw DomainError("aggregateStats: reports mix algorithms");
    }
    std::vector<double> col(reports.size());
    for (std::size_t s = 0; s < 3; ++s) {
        for (std::size_t j = 0; j < 3; ++j) {
            for (std::size_t i = 0; i < reports.size(); ++i) col[i] = rawValues(reports[i].picks[s])[j];
            st.by_strategy[s][j] = summarize(col);
        }
    }
    for (std::size_t i = 0; i < reports.size(); ++i) col[i] = trialFeasible(reports[i]) ? 1.0 : 0.0;
    st.feasibility = summarize(col);
    return st;
}

std::string formatNumber(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw std::runtime_error("formatNumber: buffer too small");
    return std::string(buf, ptr);
}

std::string statsCsv(std::span<const RunStats> stats)
{
    std::string out = "algo,strategy,objective,mean,std,max,min\n";
    auto row = [&](const std::string& algo, const std::string& strategy, const std::string& objective,
                   const Summary& s) {
        out += algo + ',' + strategy + ',' + objective + ',' + formatNumber(s.mean) + ',' + formatNumber(s.std) +
               ',' + formatNumber(s.max) + ',' + formatNumber(s.min) + '\n';
    };
    for (const auto& st : stats) {
        for (std::size_t s = 0; s < 3; ++s) {
            for (std::size_t j = 0; j < 3; ++j) {
                row(st.algo, solvers::strategyName(solvers::kStrategies[s]), kObjectiveNames[j], st.by_strategy[s][j]);
            }
        }
        row(st.algo, "all", "feasibility", st.feasibility);
    }
    return out;
}

std::vector<RunStats> parseStatsCsv(const std::string& text)
{
    const auto lines = nonEmptyLines(text);
    if (lines.empty() || lines.front() != "algo,strategy,objective,mean,std,max,min") {
        throw std::invalid_argument("stats.csv: missing or wrong header");
    }
    std::vector<RunStats> out;
    std::map<std::string, std::size_t> index;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto cells = splitCsvLine(lines[li]);
        if (cells.size() != 7) throw std::invalid_argument("stats.csv: expected 7 columns on line " + std::to_string(li + 1));
        auto [it, inserted] = index.try_emplace(cells[0], out.size());
        if (inserted) {
            out.emplace_back();
            out.back().algo = cells[0];
        }
        auto& st = out[it->second];
        const Summary s{parseNumber(cells[3]), parseNumber(cells[4]), parseNumber(cells[5]), parseNumber(cells[6])};
        if (cells[1] == "all" && cells[2] == "feasibility") {
            st.feasibility = s;
            continue;
        }
        const auto strat = static_cast<std::size_t>(solvers::parseStrategy(cells[1]));
        const auto obj = std::find_if(kObjectiveNames.begin(), kObjectiveNames.end(),
                                      [&](const char* n) { return cells[2] == n; });
        if (obj == kObjectiveNames.end()) throw std::invalid_argument("stats.csv: unknown objective '" + cells[2] + "'");
        st.by_strategy[strat][static_cast<std::size_t>(obj - kObjectiveNames.begin())] = s;
    }
    return out;
}

std::string frontCsv(const std::vector<solvers::Individual>& front)
{
    std::string out = "f1_bps,f2,f3_j,feasible\n";
    for (const auto& ind : front) {
        const auto& o = ind.objectives;
        out += formatNumber(o.f1()) + ',' + formatNumber(o.f2) + ',' + formatNumber(o.f3) + ',' +
               (o.feasible ? "1" : "0") + '\n';
    }
    return out;
}

std::vector<ObjectiveVector> parseFrontCsv(const std::string& text)
{
    const auto lines = nonEmptyLines(text);
    if (lines.empty() || lines.front() != "f1_bps,f2,f3_j,feasible") {
        throw std::invalid_argument("front csv: missing or wrong header");
    }
    std::vector<ObjectiveVector> out;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto cells = splitCsvLine(lines[li]);
        if (cells.size() != 4 || (cells[3] != "0" && cells[3] != "1")) {
            throw std::invalid_argument("front csv: malformed line " + std::to_string(li + 1));
        }
        out.push_back({-parseNumber(cells[0]), parseNumber(cells[1]), parseNumber(cells[2]), cells[3] == "1"});
    }
    return out;
}

std::string solutionRecordJson(const Solution& sol, const ObjectiveVector& obj, const std::string& algo,
                               const std::string& strategy, int trial)
{
    json uavs = json::array();
    for (int n = 0; n < sol.n_active; ++n) {
        const auto i = static_cast<std::size_t>(n);
        uavs.push_back({{"x_m", sol.x[i]},
                        {"y_m", sol.y[i]},
                        {"z_m", sol.z[i]},
                        {"tx_power_w", sol.p[i]},
                        {"speed_m_s", sol.v[i]},
                        {"channel", sol.uav_chan[i]}});
    }
    json doc = {{"algo", algo},
                {"strategy", strategy},
                {"trial", trial},
                {"n_uav", sol.n_active},
                {"uavs", uavs},
                {"assignment", sol.assign},
                {"direct_channels", sol.direct_chan},
                {"objectives",
                 {{"f1_bps", obj.f1()}, {"f2", obj.f2}, {"f3_j", obj.f3}, {"feasible", obj.feasible}}}};
    return doc.dump(2) + '\n';
}

std::pair<Solution, ObjectiveVector> parseSolutionRecord(const std::string& text)
{
    try {
        const auto doc = json::parse(text);
        Solution sol;
        sol.n_active = doc.at("n_uav").get<int>();
        const auto& uavs = doc.at("uavs");
        if (!uavs.is_array() || static_cast<int>(uavs.size()) != sol.n_active) {
            throw std::invalid_argument("solution record: uavs must list n_uav entries");
        }
        for (const auto& u : uavs) {
            sol.x.push_back(u.at("x_m").get<double>());
            sol.y.push_back(u.at("y_m").get<double>());
            sol.z.push_back(u.at("z_m").get<double>());
            sol.p.push_back(u.at("tx_power_w").get<double>());
            sol.v.push_back(u.at("speed_m_s").get<double>());
            sol.uav_chan.push_back(u.at("channel").get<int>());
        }
        sol.assign = doc.at("assignment").get<std::vector<int>>();
        sol.direct_chan = doc.at("direct_channels").get<std::vector<int>>();
        const auto& o = doc.at("objectives");
        ObjectiveVector obj{-o.at("f1_bps").get<double>(), o.at("f2").get<double>(), o.at("f3_j").get<double>(),
                            o.at("feasible").get<bool>()};
        return {std::move(sol), obj};
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("solution record: ") + e.what());
    }
}

std::string readFile(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void writeFile(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out.flush()) throw IoError("write failed for " + path.string());
}

void exportResults(std::span<const TrialReport> reports, const RunStats& stats, const std::filesystem::path& out_dir,
                   const ScenarioConfig& cfg, const solvers::RunConfig& rc)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    writeFile(out_dir / "stats.csv", statsCsv(std::span<const RunStats>(&stats, 1)));
    json trials = json::array();
    for (const auto& r : reports) {
        const auto algo = algoName(r.algo);
        const auto tag = std::to_string(r.trial);
        writeFile(out_dir / ("front_" + algo + "_" + tag + ".csv"), frontCsv(r.final_front));
        for (std::size_t s = 0; s < solvers::kStrategies.size(); ++s) {
            const auto name = solvers::strategyName(solvers::kStrategies[s]);
            std::string lower;
            for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
            const auto& ind = r.final_front.at(r.pick_index[s]);
            writeFile(out_dir / ("pick_" + lower + "_" + tag + ".json"),
                      solutionRecordJson(ind.genome, ind.objectives, algo, name, r.trial));
        }
        trials.push_back({{"trial", r.trial}, {"seed", r.trial_seed}, {"front_size", r.final_front.size()},
                          {"wall_time_s", r.wall_time_s}});
    }
    json manifest = {{"algo", stats.algo},
                     {"pop", rc.pop},
                     {"iters", rc.max_iters},
                     {"base_seed", rc.seed},
                     {"sigma1", rc.sigma1},
                     {"sigma2", rc.sigma2},
                     {"p_in", rc.p_in},
                     {"ref_divisions", rc.ref_divisions},
                     {"relayed_pairs", cfg.relayedCount()},
                     {"direct_pairs", cfg.directCount()},
                     {"trials", trials}};
    writeFile(out_dir / "manifest.json", manifest.dump(2) + '\n');
}

std::vector<std::vector<TrialReport>> loadReports(const std::filesystem::path& dir)
{
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) throw IoError("not a directory: " + dir.string());
    static const std::regex pattern(R"(front_([a-z0-9]+)_([0-9]+)\.csv)");
    std::map<std::pair<int, int>, TrialReport> found;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        std::smatch m;
        if (!entry.is_regular_file() || !std::regex_match(name, m, pattern)) continue;
        TrialReport rep;
        rep.algo = parseAlgo(m[1].str());
        rep.trial = std::stoi(m[2].str());
        for (const auto& o : parseFrontCsv(readFile(entry.path()))) {
            solvers::Individual ind;
            ind.objectives = o;
            rep.final_front.push_back(std::move(ind));
        }
        if (rep.final_front.empty()) throw std::invalid_argument(name + ": empty front");
        choosePicks(rep);
        found.emplace(std::pair{static_cast<int>(rep.algo), rep.trial}, std::move(rep));
    }
    std::vector<std::vector<TrialReport>> out;
    int current = -1;
    for (auto& [key, rep] : found) {
        if (key.first != current) {
            out.emplace_back();
            current = key.first;
        }
        out.back().push_back(std::move(rep));
    }
    return out;
}

} // namespace skyrelay::bench
