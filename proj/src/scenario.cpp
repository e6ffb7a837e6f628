#include "skyrelay/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "skyrelay/rng.hpp"

namespace skyrelay {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr double kSwdPowerW = 0.01;
constexpr double kDirectActivity = 0.6;
constexpr double kDirectRingInnerM = 10.0;
constexpr double kDirectRingOuterM = 50.0;

std::string joinLines(const std::vector<std::string>& lines)
{
    std::string out = "invalid scenario:";
    for (const auto& l : lines) {
        out += "\n  ";
        out += l;
    }
    return out;
}

Vec2 uniformPoint(Rng& rng, double lo, double hi)
{
    const double x = rng.uniform(lo, hi);
    const double y = rng.uniform(lo, hi);
    return {x, y};
}

Vec2 ringPoint(Rng& rng, Vec2 centre, double lo, double hi)
{
    // Redraw until the partner lands inside the area.
    for (;;) {
        const double r = rng.uniform(kDirectRingInnerM, kDirectRingOuterM);
        const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const Vec2 p{centre.x + r * std::cos(phi), centre.y + r * std::sin(phi)};
        if (p.x >= lo && p.x <= hi && p.y >= lo && p.y <= hi) {
            return p;
        }
    }
}

void checkPairs(const std::vector<DevicePair>& pairs, const char* label, const ScenarioConfig& cfg,
                std::vector<std::string>& out)
{
    auto inArea = [&](Vec2 p) {
        return p.x >= cfg.l_min_m && p.x <= cfg.l_max_m && p.y >= cfg.l_min_m && p.y <= cfg.l_max_m;
    };
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& p = pairs[i];
        const std::string at = std::string(label) + "[" + std::to_string(i) + "]";
        if (!inArea(p.swd)) out.push_back(at + ".swd outside [l_min, l_max]^2");
        if (!inArea(p.dwd)) out.push_back(at + ".dwd outside [l_min, l_max]^2");
        if (!(p.tx_power_w > 0.0)) out.push_back(at + ".tx_power_w must be > 0");
        if (!(p.activity >= 0.0 && p.activity <= 1.0)) out.push_back(at + ".activity must lie in [0, 1]");
        if (p.kind == PairKind::relayed && p.activity != 1.0) out.push_back(at + ".activity must be 1 for relayed pairs");
    }
}

// --- JSON mapping -----------------------------------------------------------

json pairToJson(const DevicePair& p)
{
    return {{"swd", {p.swd.x, p.swd.y}},
            {"dwd", {p.dwd.x, p.dwd.y}},
            {"tx_power_w", p.tx_power_w},
            {"activity", p.activity}};
}

// Collects field errors instead of failing on the first one.
class Reader {
public:
    explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

    const json* object(const json& parent, const char* key)
    {
        if (!parent.contains(key) || !parent[key].is_object()) {
            errors_.push_back(std::string("missing object '") + key + "'");
            return nullptr;
        }
        return &parent[key];
    }

    template <class T>
    void field(const json* obj, const char* section, const char* key, T& dst)
    {
        if (obj == nullptr) return;
        const auto it = obj->find(key);
        if (it == obj->end()) {
            errors_.push_back(std::string(section) + "." + key + " missing");
            return;
        }
        try {
            dst = it->template get<T>();
        } catch (const json::exception&) {
            errors_.push_back(std::string(section) + "." + key + " has the wrong type");
        }
    }

    Vec2 point(const json& arr, const std::string& where)
    {
        if (!arr.is_array() || arr.size() != 2 || !arr[0].is_number() || !arr[1].is_number()) {
            errors_.push_back(where + " must be [x, y]");
            return {};
        }
        return {arr[0].get<double>(), arr[1].get<double>()};
    }

    std::vector<DevicePair> pairs(const json& doc, const char* key, PairKind kind)
    {
        std::vector<DevicePair> out;
        if (!doc.contains(key) || !doc[key].is_array()) {
            errors_.push_back(std::string("missing array '") + key + "'");
            return out;
        }
        for (std::size_t i = 0; i < doc[key].size(); ++i) {
            const auto& item = doc[key][i];
            const std::string at = std::string(key) + "[" + std::to_string(i) + "]";
            DevicePair p;
            p.kind = kind;
            if (!item.is_object()) {
                errors_.push_back(at + " must be an object");
                continue;
            }
            p.swd = point(item.value("swd", json()), at + ".swd");
            p.dwd = point(item.value("dwd", json()), at + ".dwd");
            field(&item, at.c_str(), "tx_power_w", p.tx_power_w);
            field(&item, at.c_str(), "activity", p.activity);
            out.push_back(p);
        }
        return out;
    }

private:
    std::vector<std::string>& errors_;
};

} // namespace

ScenarioError::ScenarioError(std::vector<std::string> violations)
    : std::runtime_error(joinLines(violations)), violations_(std::move(violations))
{
}

double ChannelParams::beta0Linear() const
{
    return std::pow(10.0, beta0_db / 10.0);
}

double ChannelParams::noisePowerW() const
{
    const double dbm = noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz);
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

ScenarioConfig genScenario(Scale scale, std::uint64_t seed)
{
    ScenarioConfig cfg;
    int m = 10;
    int k = 3;
    if (scale == Scale::one) {
        cfg.n_max = 8;
        cfg.n_min = 4;
        cfg.u_channels = 3;
    } else {
        cfg.n_max = 16;
        cfg.n_min = 8;
        cfg.u_channels = 7;
        m = 100;
        k = 6;
    }

    Rng rng(seed);
    const double lo = cfg.l_min_m;
    const double hi = cfg.l_max_m;
    for (int i = 0; i < m; ++i) {
        DevicePair p;
        p.kind = PairKind::relayed;
        p.swd = uniformPoint(rng, lo, hi);
        p.dwd = uniformPoint(rng, lo, hi);
        p.tx_power_w = kSwdPowerW;
        p.activity = 1.0;
        cfg.relayed_pairs.push_back(p);
    }
    for (int i = 0; i < k; ++i) {
        DevicePair p;
        p.kind = PairKind::direct;
        p.swd = uniformPoint(rng, lo, hi);
        p.dwd = ringPoint(rng, p.swd, lo, hi);
        p.tx_power_w = kSwdPowerW;
        p.activity = kDirectActivity;
        cfg.direct_pairs.push_back(p);
    }
    return cfg;
}

std::vector<std::string> checkScenario(const ScenarioConfig& cfg)
{
    std::vector<std::string> out;
    const int m = cfg.relayedCount();

    if (cfg.n_min < 1) out.emplace_back("N_min >= 1 violated");
    if (cfg.u_channels < 1) out.emplace_back("U >= 1 violated");
    if (!(cfg.u_channels < cfg.n_min)) out.emplace_back("U < N_min violated");
    if (!(cfg.n_min <= cfg.n_max)) out.emplace_back("N_min <= N_max violated");
    if (!(cfg.n_max < m)) out.emplace_back("N_max < M violated");
    if (!(cfg.l_min_m < cfg.l_max_m)) out.emplace_back("l_min < l_max violated");
    if (!(cfg.z_min_m < cfg.z_max_m)) out.emplace_back("z_min < z_max violated");
    if (!(cfg.z_min_m > 0.0)) out.emplace_back("z_min > 0 violated");
    if (!(cfg.v_min_m_s < cfg.v_max_m_s)) out.emplace_back("v_min < v_max violated");
    if (!(cfg.v_min_m_s > 0.0)) out.emplace_back("v_min > 0 violated");
    if (!(cfg.p_min_w < cfg.p_max_w)) out.emplace_back("p_min < p_max violated");
    if (!(cfg.p_min_w > 0.0)) out.emplace_back("p_min > 0 violated");
    if (!(cfg.t_th_s > 0.0)) out.emplace_back("t_th > 0 violated");

    const auto& ch = cfg.channel;
    if (!(ch.bandwidth_hz > 0.0)) out.emplace_back("channel.bandwidth_hz > 0 violated");
    if (!(ch.carrier_hz > 0.0)) out.emplace_back("channel.carrier_hz > 0 violated");
    if (!(ch.alpha >= 1.0)) out.emplace_back("channel.alpha >= 1 violated");
    if (!(ch.a > 0.0)) out.emplace_back("channel.a > 0 violated");
    if (!(ch.b > 0.0)) out.emplace_back("channel.b > 0 violated");
    if (!(ch.light_speed_m_s > 0.0)) out.emplace_back("channel.light_speed_m_s > 0 violated");

    const auto& ep = cfg.energy;
    const std::pair<const char*, double> positive[] = {
        {"p_blade_w", ep.p_blade_w},
        {"p_induced_w", ep.p_induced_w},
        {"tip_speed_m_s", ep.tip_speed_m_s},
        {"rotor_induced_v_m_s", ep.rotor_induced_v_m_s},
        {"drag_ratio", ep.drag_ratio},
        {"air_density_kg_m3", ep.air_density_kg_m3},
        {"rotor_solidity", ep.rotor_solidity},
        {"disk_area_m2", ep.disk_area_m2},
        {"uav_mass_kg", ep.uav_mass_kg},
        {"gravity_m_s2", ep.gravity_m_s2},
    };
    for (const auto& [name, value] : positive) {
        if (!(value > 0.0)) out.push_back(std::string("energy.") + name + " > 0 violated");
    }

    checkPairs(cfg.relayed_pairs, "relayed_pairs", cfg, out);
    checkPairs(cfg.direct_pairs, "direct_pairs", cfg, out);
    for (const auto& p : cfg.relayed_pairs) {
        if (p.kind != PairKind::relayed) {
            out.emplace_back("relayed_pairs contains a direct pair");
            break;
        }
    }
    for (const auto& p : cfg.direct_pairs) {
        if (p.kind != PairKind::direct) {
            out.emplace_back("direct_pairs contains a relayed pair");
            break;
        }
    }
    return out;
}

void validateScenario(const ScenarioConfig& cfg)
{
    auto errors = checkScenario(cfg);
    if (!errors.empty()) {
        throw ScenarioError(std::move(errors));
    }
}

std::string scenarioToJson(const ScenarioConfig& cfg)
{
    const auto& ch = cfg.channel;
    const auto& ep = cfg.energy;
    json doc;
    doc["schema"] = kSchemaVersion;
    doc["counts"] = {{"m", cfg.relayedCount()},
                     {"k", cfg.directCount()},
                     {"n_min", cfg.n_min},
                     {"n_max", cfg.n_max},
                     {"u_channels", cfg.u_channels}};
    doc["bounds"] = {{"l_min_m", cfg.l_min_m},     {"l_max_m", cfg.l_max_m},     {"z_min_m", cfg.z_min_m},
                     {"z_max_m", cfg.z_max_m},     {"v_min_m_s", cfg.v_min_m_s}, {"v_max_m_s", cfg.v_max_m_s},
                     {"p_min_w", cfg.p_min_w},     {"p_max_w", cfg.p_max_w},     {"t_th_s", cfg.t_th_s}};
    doc["channel"] = {{"a", ch.a},
                      {"b", ch.b},
                      {"eta_los_db", ch.eta_los_db},
                      {"eta_nlos_db", ch.eta_nlos_db},
                      {"beta0_db", ch.beta0_db},
                      {"alpha", ch.alpha},
                      {"bandwidth_hz", ch.bandwidth_hz},
                      {"carrier_hz", ch.carrier_hz},
                      {"noise_psd_dbm_hz", ch.noise_psd_dbm_hz},
                      {"light_speed_m_s", ch.light_speed_m_s}};
    doc["energy"] = {{"p_blade_w", ep.p_blade_w},
                     {"p_induced_w", ep.p_induced_w},
                     {"tip_speed_m_s", ep.tip_speed_m_s},
                     {"rotor_induced_v_m_s", ep.rotor_induced_v_m_s},
                     {"drag_ratio", ep.drag_ratio},
                     {"air_density_kg_m3", ep.air_density_kg_m3},
                     {"rotor_solidity", ep.rotor_solidity},
                     {"disk_area_m2", ep.disk_area_m2},
                     {"uav_mass_kg", ep.uav_mass_kg},
                     {"gravity_m_s2", ep.gravity_m_s2},
                     {"induced_quartic_denominator", ep.induced_quartic_denominator}};
    doc["relayed_pairs"] = json::array();
    for (const auto& p : cfg.relayed_pairs) doc["relayed_pairs"].push_back(pairToJson(p));
    doc["direct_pairs"] = json::array();
    for (const auto& p : cfg.direct_pairs) doc["direct_pairs"].push_back(pairToJson(p));
    return doc.dump(2) + "\n";
}

ScenarioConfig scenarioFromJson(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError({std::string("parse error: ") + e.what()});
    }
    if (!doc.is_object()) {
        throw ScenarioError({"document root must be an object"});
    }

    std::vector<std::string> errors;
    Reader rd(errors);
    ScenarioConfig cfg;

    int schema = 0;
    if (!doc.contains("schema") || !doc["schema"].is_number_integer()) {
        errors.emplace_back("schema missing");
    } else if ((schema = doc["schema"].get<int>()) != kSchemaVersion) {
        errors.push_back("unsupported schema " + std::to_string(schema));
    }

    const json* counts = rd.object(doc, "counts");
    int m = -1;
    int k = -1;
    rd.field(counts, "counts", "m", m);
    rd.field(counts, "counts", "k", k);
    rd.field(counts, "counts", "n_min", cfg.n_min);
    rd.field(counts, "counts", "n_max", cfg.n_max);
    rd.field(counts, "counts", "u_channels", cfg.u_channels);

    const json* bounds = rd.object(doc, "bounds");
    rd.field(bounds, "bounds", "l_min_m", cfg.l_min_m);
    rd.field(bounds, "bounds", "l_max_m", cfg.l_max_m);
    rd.field(bounds, "bounds", "z_min_m", cfg.z_min_m);
    rd.field(bounds, "bounds", "z_max_m", cfg.z_max_m);
    rd.field(bounds, "bounds", "v_min_m_s", cfg.v_min_m_s);
    rd.field(bounds, "bounds", "v_max_m_s", cfg.v_max_m_s);
    rd.field(bounds, "bounds", "p_min_w", cfg.p_min_w);
    rd.field(bounds, "bounds", "p_max_w", cfg.p_max_w);
    rd.field(bounds, "bounds", "t_th_s", cfg.t_th_s);

    auto& ch = cfg.channel;
    const json* channel = rd.object(doc, "channel");
    rd.field(channel, "channel", "a", ch.a);
    rd.field(channel, "channel", "b", ch.b);
    rd.field(channel, "channel", "eta_los_db", ch.eta_los_db);
    rd.field(channel, "channel", "eta_nlos_db", ch.eta_nlos_db);
    rd.field(channel, "channel", "beta0_db", ch.beta0_db);
    rd.field(channel, "channel", "alpha", ch.alpha);
    rd.field(channel, "channel", "bandwidth_hz", ch.bandwidth_hz);
    rd.field(channel, "channel", "carrier_hz", ch.carrier_hz);
    rd.field(channel, "channel", "noise_psd_dbm_hz", ch.noise_psd_dbm_hz);
    rd.field(channel, "channel", "light_speed_m_s", ch.light_speed_m_s);

    auto& ep = cfg.energy;
    const json* energy = rd.object(doc, "energy");
    rd.field(energy, "energy", "p_blade_w", ep.p_blade_w);
    rd.field(energy, "energy", "p_induced_w", ep.p_induced_w);
    rd.field(energy, "energy", "tip_speed_m_s", ep.tip_speed_m_s);
    rd.field(energy, "energy", "rotor_induced_v_m_s", ep.rotor_induced_v_m_s);
    rd.field(energy, "energy", "drag_ratio", ep.drag_ratio);
    rd.field(energy, "energy", "air_density_kg_m3", ep.air_density_kg_m3);
    rd.field(energy, "energy", "rotor_solidity", ep.rotor_solidity);
    rd.field(energy, "energy", "disk_area_m2", ep.disk_area_m2);
    rd.field(energy, "energy", "uav_mass_kg", ep.uav_mass_kg);
    rd.field(energy, "energy", "gravity_m_s2", ep.gravity_m_s2);
    if (energy != nullptr && energy->contains("induced_quartic_denominator")) {
        rd.field(energy, "energy", "induced_quartic_denominator", ep.induced_quartic_denominator);
    }

    cfg.relayed_pairs = rd.pairs(doc, "relayed_pairs", PairKind::relayed);
    cfg.direct_pairs = rd.pairs(doc, "direct_pairs", PairKind::direct);
    if (m >= 0 && m != cfg.relayedCount()) errors.emplace_back("counts.m does not match relayed_pairs length");
    if (k >= 0 && k != cfg.directCount()) errors.emplace_back("counts.k does not match direct_pairs length");

    if (errors.empty()) {
        errors = checkScenario(cfg);
    }
    if (!errors.empty()) {
        throw ScenarioError(std::move(errors));
    }
    return cfg;
}

void saveScenario(const ScenarioConfig& cfg, const std::filesystem::path& path)
{
    validateScenario(cfg);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << scenarioToJson(cfg);
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

ScenarioConfig loadScenario(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenarioFromJson(buf.str());
}

} // namespace skyrelay
