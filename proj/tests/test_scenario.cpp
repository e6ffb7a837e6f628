#include <doctest.h>

#include <cmath>
#include <filesystem>

#include <json.hpp>

#include "skyrelay/errors.hpp"
#include "skyrelay/scenario.hpp"

using namespace skyrelay;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / "skyrelay_tests";
    fs::create_directories(dir);
    return dir / name;
}

bool inArea(Vec2 p, const ScenarioConfig& cfg)
{
    return p.x >= cfg.l_min_m && p.x <= cfg.l_max_m && p.y >= cfg.l_min_m && p.y <= cfg.l_max_m;
}

} // namespace

TEST_CASE("scale one counts")
{
    const auto cfg = genScenario(Scale::one, 42);
    CHECK(cfg.relayedCount() == 10);
    CHECK(cfg.directCount() == 3);
    CHECK(cfg.u_channels == 3);
    CHECK(cfg.n_min == 4);
    CHECK(cfg.n_max == 8);
}

TEST_CASE("scale two counts")
{
    const auto cfg = genScenario(Scale::two, 42);
    CHECK(cfg.relayedCount() == 100);
    CHECK(cfg.directCount() == 6);
    CHECK(cfg.u_channels == 7);
    CHECK(cfg.n_min == 8);
    CHECK(cfg.n_max == 16);
}

TEST_CASE("generation is a pure function of scale and seed")
{
    CHECK(genScenario(Scale::one, 42) == genScenario(Scale::one, 42));
    CHECK(genScenario(Scale::two, 42) == genScenario(Scale::two, 42));
    CHECK_FALSE(genScenario(Scale::one, 42) == genScenario(Scale::one, 43));
}

TEST_CASE("generated scenarios carry the reference parameters")
{
    const auto cfg = genScenario(Scale::one, 1);
    CHECK(cfg.l_max_m - cfg.l_min_m == 400.0);
    CHECK(cfg.z_min_m == 200.0);
    CHECK(cfg.z_max_m == 500.0);
    CHECK(cfg.v_min_m_s == 6.0);
    CHECK(cfg.v_max_m_s == 16.0);
    CHECK(cfg.p_min_w == 0.1);
    CHECK(cfg.p_max_w == 1.0);
    CHECK(cfg.t_th_s == 12.0);
    CHECK(cfg.channel.a == 9.61);
    CHECK(cfg.channel.b == 0.16);
    CHECK(cfg.channel.eta_los_db == 1.0);
    CHECK(cfg.channel.eta_nlos_db == 20.0);
    CHECK(cfg.channel.beta0Linear() == doctest::Approx(1e-6).epsilon(1e-12));
    CHECK(cfg.channel.alpha == 2.0);
    CHECK(cfg.channel.bandwidth_hz == 1e6);
    CHECK(cfg.channel.carrier_hz == 2e9);
    for (const auto& p : cfg.relayed_pairs) {
        CHECK(p.tx_power_w == 0.01);
        CHECK(p.activity == 1.0);
    }
    for (const auto& p : cfg.direct_pairs) {
        CHECK(p.tx_power_w == 0.01);
        CHECK(p.activity == 0.6);
    }
}

TEST_CASE("noise power integrates the PSD over the bandwidth")
{
    ChannelParams ch;
    // -174 dBm/Hz + 60 dB = -114 dBm = 10^-14.4 W
    CHECK(ch.noisePowerW() == doctest::Approx(std::pow(10.0, -14.4)).epsilon(1e-12));
}

TEST_CASE("invariants hold across seeds and scales")
{
    for (auto scale : {Scale::one, Scale::two}) {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const auto cfg = genScenario(scale, seed);
            REQUIRE(checkScenario(cfg).empty());
            CHECK(cfg.u_channels < cfg.n_min);
            CHECK(cfg.n_min < cfg.n_max);
            CHECK(cfg.n_max < cfg.relayedCount());
            for (const auto& p : cfg.relayed_pairs) {
                CHECK(inArea(p.swd, cfg));
                CHECK(inArea(p.dwd, cfg));
            }
            for (const auto& p : cfg.direct_pairs) {
                CHECK(inArea(p.swd, cfg));
                CHECK(inArea(p.dwd, cfg));
                const double d = std::hypot(p.swd.x - p.dwd.x, p.swd.y - p.dwd.y);
                CHECK(d >= 10.0);
                CHECK(d <= 50.0);
            }
        }
    }
}

TEST_CASE("save and load round trip")
{
    const auto cfg = genScenario(Scale::one, 7);
    const auto path = scratch("roundtrip.json");
    saveScenario(cfg, path);
    CHECK(loadScenario(path) == cfg);
    CHECK(scenarioFromJson(scenarioToJson(genScenario(Scale::two, 3))) == genScenario(Scale::two, 3));
}

TEST_CASE("channel count must stay below N_min")
{
    auto doc = nlohmann::json::parse(scenarioToJson(genScenario(Scale::one, 7)));
    doc["counts"]["u_channels"] = 5;
    try {
        scenarioFromJson(doc.dump());
        FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
        bool found = false;
        for (const auto& v : e.violations()) found = found || v == "U < N_min violated";
        CHECK(found);
    }
}

TEST_CASE("every violated field is reported")
{
    auto cfg = genScenario(Scale::one, 7);
    cfg.n_max = 20;
    cfg.z_min_m = 600.0;
    cfg.relayed_pairs[0].tx_power_w = 0.0;
    const auto errs = checkScenario(cfg);
    CHECK(errs.size() >= 3);
    CHECK_THROWS_AS(validateScenario(cfg), ScenarioError);
    bool nmax = false;
    for (const auto& e : errs) nmax = nmax || e == "N_max < M violated";
    CHECK(nmax);
}

TEST_CASE("malformed documents are rejected")
{
    CHECK_THROWS_AS(scenarioFromJson("{"), ScenarioError);
    CHECK_THROWS_AS(scenarioFromJson("[]"), ScenarioError);
    auto doc = nlohmann::json::parse(scenarioToJson(genScenario(Scale::one, 7)));
    doc["schema"] = 2;
    CHECK_THROWS_AS(scenarioFromJson(doc.dump()), ScenarioError);
    doc = nlohmann::json::parse(scenarioToJson(genScenario(Scale::one, 7)));
    doc["relayed_pairs"][0]["swd"] = {1.0};
    CHECK_THROWS_AS(scenarioFromJson(doc.dump()), ScenarioError);
}

TEST_CASE("missing file is an I/O error")
{
    CHECK_THROWS_AS(loadScenario(scratch("does_not_exist.json")), IoError);
}
