#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "hetsim/model.hpp"
#include "hetsim/util.hpp"

using namespace hetsim;

TEST_CASE("power grid is linear in the level and tops out at p_max")
{
    CHECK(power_of_level(4, 4, 200.0) == doctest::Approx(200.0));
    CHECK(power_of_level(1, 4, 200.0) == doctest::Approx(50.0));
    CHECK(power_of_level(2, 4, 200.0) == doctest::Approx(100.0));
    CHECK_THROWS_AS(power_of_level(0, 4, 200.0), std::out_of_range);
    CHECK_THROWS_AS(power_of_level(5, 4, 200.0), std::out_of_range);

    for (int levels = 1; levels <= 8; ++levels) {
        double prev = 0.0;
        for (int l = 1; l <= levels; ++l) {
            const double p = power_of_level(l, levels, 123.0);
            CHECK(p > prev);
            CHECK(p <= 123.0 + 1e-12);
            prev = p;
        }
        CHECK(power_of_level(levels, levels, 123.0) == doctest::Approx(123.0));
    }
}

TEST_CASE("licensed action set enumerates L x S x B distinct actions")
{
    ScenarioConfig cfg;
    cfg.power_levels = 3;
    cfg.num_subbands_licensed = 4;
    cfg.bias_levels = 2;
    cfg.bias_values = {0.0, 3.0};
    const ActionSet actions = enumerate_actions(cfg, Band::licensed);
    CHECK(actions.size() == 24);

    std::set<std::tuple<int, int, int>> keys;
    const double p_max = dbm_to_mw(cfg.max_power);
    for (const Action& a : actions) {
        keys.insert({a.power_level, a.subband, a.bias_index});
        CHECK(a.transmit_power_mw <= p_max + 1e-9);
    }
    CHECK(keys.size() == actions.size());
}

TEST_CASE("singleton configuration yields one action")
{
    ScenarioConfig cfg;
    cfg.power_levels = 1;
    cfg.num_subbands_licensed = 1;
    cfg.bias_levels = 1;
    cfg.bias_values = {0.0};
    CHECK(enumerate_actions(cfg, Band::licensed).size() == 1);
}

TEST_CASE("two power levels with 100 mW cap give the {50, 100} grid")
{
    ScenarioConfig cfg;
    cfg.power_levels = 2;
    cfg.max_power = mw_to_dbm(100.0);
    cfg.num_subbands_licensed = 2;
    cfg.bias_levels = 1;
    cfg.bias_values = {0.0};
    std::set<double> powers;
    for (const Action& a : enumerate_actions(cfg, Band::licensed))
        powers.insert(std::round(a.transmit_power_mw * 1e6) / 1e6);
    CHECK(powers == std::set<double>{50.0, 100.0});
}

TEST_CASE("unlicensed action set drops the bias dimension")
{
    ScenarioConfig cfg;
    cfg.power_levels = 3;
    cfg.num_subbands_unlicensed = 4;
    cfg.bias_levels = 4;
    const ActionSet actions = enumerate_actions(cfg, Band::unlicensed);
    CHECK(actions.size() == 12); // L x S_unlic
    for (const Action& a : actions) {
        CHECK(a.bias_index == 1);
        CHECK(a.bias_db == 0.0);
        CHECK(a.transmit_power_mw <= dbm_to_mw(cfg.unlicensed_power) + 1e-9);
    }
}

TEST_CASE("actions are strictly increasing in power for fixed subband and bias")
{
    ScenarioConfig cfg;
    cfg.power_levels = 4;
    const ActionSet actions = enumerate_actions(cfg, Band::licensed);
    for (const Action& a : actions) {
        for (const Action& b : actions) {
            if (a.subband == b.subband && a.bias_index == b.bias_index &&
                a.power_level < b.power_level)
                CHECK(a.transmit_power_mw < b.transmit_power_mw);
        }
    }
}

TEST_CASE("topology drops the paper's hotspot share around each SCBS")
{
    ScenarioConfig cfg;
    cfg.num_small_cells = 2;
    cfg.num_ues_per_sector = 30;
    const Topology topo = build_scenario(cfg);

    CHECK(topo.scbs_positions.size() == 6);
    CHECK(topo.ue_positions.size() == 90);

    // 10 hotspot UEs per SCBS, 10 uniform per sector.
    std::vector<int> per_scbs(6, 0);
    int uniform = 0;
    for (int home : topo.ue_home) {
        if (home >= 0)
            ++per_scbs[static_cast<std::size_t>(home)];
        else
            ++uniform;
    }
    for (int count : per_scbs)
        CHECK(count == 10);
    CHECK(uniform == 30);

    for (std::size_t u = 0; u < topo.ue_positions.size(); ++u) {
        if (topo.ue_home[u] >= 0)
            CHECK(distance(topo.ue_positions[u],
                           topo.scbs_positions[static_cast<std::size_t>(topo.ue_home[u])]) <=
                  cfg.hotspot_radius + 1e-9);
        else
            CHECK(distance(topo.ue_positions[u], topo.mbs_position) <= cfg.sector_radius + 1e-9);
    }
    for (const Vec2& pos : topo.scbs_positions)
        CHECK(distance(pos, topo.mbs_position) >= cfg.min_mbs_scbs_distance);
}

TEST_CASE("no small cells means purely uniform drops")
{
    ScenarioConfig cfg;
    cfg.num_small_cells = 0;
    cfg.num_ues_per_sector = 10;
    const Topology topo = build_scenario(cfg);
    CHECK(topo.scbs_positions.empty());
    CHECK(topo.ue_positions.size() == 30);
    for (int home : topo.ue_home)
        CHECK(home == -1);
}

TEST_CASE("identical config and seed give bitwise-identical topologies")
{
    ScenarioConfig cfg;
    cfg.seed = 77;
    const Topology a = build_scenario(cfg);
    const Topology b = build_scenario(cfg);
    REQUIRE(a.ue_positions.size() == b.ue_positions.size());
    for (std::size_t i = 0; i < a.ue_positions.size(); ++i) {
        CHECK(a.ue_positions[i].x == b.ue_positions[i].x);
        CHECK(a.ue_positions[i].y == b.ue_positions[i].y);
        CHECK(a.ue_heading_rad[i] == b.ue_heading_rad[i]);
    }
    for (std::size_t i = 0; i < a.scbs_positions.size(); ++i) {
        CHECK(a.scbs_positions[i].x == b.scbs_positions[i].x);
        CHECK(a.scbs_positions[i].y == b.scbs_positions[i].y);
    }
    CHECK(a.ue_home == b.ue_home);
}

TEST_CASE("hotspot count matches the floor formula across scales")
{
    for (std::int64_t k = 1; k <= 8; ++k) {
        for (std::int64_t n : {3, 7, 30, 75, 150, 300}) {
            const std::int64_t expected =
                static_cast<std::int64_t>(std::floor(2.0 / 3.0 * static_cast<double>(n) /
                                                     static_cast<double>(k)));
            CHECK(hotspot_ues_per_scbs(n, k) == expected);
        }
    }
}

TEST_CASE("infeasible placement reports an error")
{
    ScenarioConfig cfg;
    cfg.num_small_cells = 1;
    cfg.sector_radius = 50.0; // smaller than the minimum MBS-SCBS distance
    CHECK_THROWS_AS(build_scenario(cfg), std::runtime_error);
}

TEST_CASE("scenario file parsing covers every field and rejects unknown keys")
{
    const std::string text = "# comment line\n"
                             "num_small_cells = 3\n"
                             "num_ues_per_sector=12\n"
                             "bias_levels=2\n"
                             "bias_values=0,6\n"
                             "max_power=24\n"
                             "tti_count=100  # inline comment\n"
                             "traffic.voip.period_ms=10\n";
    const ScenarioConfig cfg = parse_config_text(text);
    CHECK(cfg.num_small_cells == 3);
    CHECK(cfg.num_ues_per_sector == 12);
    CHECK(cfg.bias_values == std::vector<double>{0.0, 6.0});
    CHECK(cfg.max_power == doctest::Approx(24.0));
    CHECK(cfg.tti_count == 100);
    CHECK(cfg.traffic.voip_period_ms == 10);

    CHECK_THROWS_AS(parse_config_text("no_such_key=1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("bias_levels=3\nbias_values=0,3\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("bias_values=3,1,2\nbias_levels=3\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("num_ues_per_sector=0\n"), std::invalid_argument);
}
