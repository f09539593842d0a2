#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "hetsim/radio.hpp"
#include "hetsim/rng.hpp"
#include "hetsim/util.hpp"

using namespace hetsim;

TEST_CASE("pathloss recipes at reference distances")
{
    CHECK(pathloss_db(LinkKind::macro_to_ue, 1000.0) == doctest::Approx(128.1).epsilon(1e-12));
    CHECK(pathloss_db(LinkKind::scbs_to_ue, 100.0) == doctest::Approx(104.0).epsilon(1e-12));
    CHECK(pathloss_db(LinkKind::macro_to_ue, 0.001) == doctest::Approx(38.0));
    CHECK_THROWS_AS(pathloss_db(LinkKind::macro_to_ue, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(pathloss_db(LinkKind::scbs_to_ue, -5.0), std::invalid_argument);
}

TEST_CASE("pathloss is monotone and continuous above the clamp")
{
    for (LinkKind kind : {LinkKind::macro_to_ue, LinkKind::scbs_to_ue}) {
        double prev = pathloss_db(kind, 10.0);
        for (double d = 11.0; d <= 2000.0; d += 7.3) {
            const double pl = pathloss_db(kind, d);
            CHECK(pl >= prev);
            CHECK(pl - prev < 5.0); // no jumps at this step size
            prev = pl;
        }
    }
}

TEST_CASE("sinr definition covers the trivial identities")
{
    CHECK(sinr_linear(1e-6, 0.0, 1e-6) == doctest::Approx(1.0));
    // Two equal-power equidistant interferers, negligible noise.
    CHECK(sinr_linear(2.0, 4.0, 1e-15) == doctest::Approx(0.5));
}

TEST_CASE("randomized layouts match an independently coded scalar oracle")
{
    RngStream rng(42, "radio-oracle");
    const RadioParams params;
    const double subband_hz = 1.25e6;
    for (int trial = 0; trial < 200; ++trial) {
        const Vec2 ue{rng.uniform(-300, 300), rng.uniform(-300, 300)};
        StationTx server{{rng.uniform(-300, 300), rng.uniform(-300, 300)},
                         rng.uniform(10.0, 2000.0),
                         LinkKind::scbs_to_ue,
                         1,
                         0.0};
        std::vector<StationTx> others;
        for (int i = 0; i < 3; ++i) {
            others.push_back({{rng.uniform(-300, 300), rng.uniform(-300, 300)},
                              rng.uniform(10.0, 2000.0),
                              i % 2 == 0 ? LinkKind::macro_to_ue : LinkKind::scbs_to_ue,
                              1 + static_cast<int>(rng.uniform_int(2)),
                              0.0});
        }

        const LinkBudget budget = evaluate_link(ue, server, others, 1, subband_hz, params);

        // Re-derive the sum from scratch.
        auto pl = [&](const StationTx& tx) {
            const double d = std::hypot(ue.x - tx.position.x, ue.y - tx.position.y);
            const double raw = tx.kind == LinkKind::macro_to_ue
                                   ? 128.1 + 37.6 * std::log10(d / 1000.0)
                                   : 140.7 + 36.7 * std::log10(d / 1000.0);
            return std::max(raw, params.pathloss_floor_db);
        };
        const double rx = server.tx_power_mw * std::pow(10.0, -pl(server) / 10.0);
        double interference = 0.0;
        for (const StationTx& tx : others)
            if (tx.subband == 1)
                interference += tx.tx_power_mw * std::pow(10.0, -pl(tx) / 10.0);
        const double noise = std::pow(10.0, params.noise_density_dbm_hz / 10.0) * subband_hz;
        const double expected_sinr = rx / (interference + noise);

        CHECK(budget.sinr == doctest::Approx(expected_sinr).epsilon(1e-12));
        CHECK(budget.rate_bps ==
              doctest::Approx(subband_hz *
                              std::log2(1.0 + std::min(expected_sinr,
                                                       std::pow(10.0, params.sinr_cap_db / 10.0))))
                  .epsilon(1e-12));
    }
}

TEST_CASE("licensed rate frozen values")
{
    CHECK(licensed_rate_bps(1.0, 1.0) == doctest::Approx(1.0));
    CHECK(licensed_rate_bps(0.0, 5e6) == doctest::Approx(0.0));
    CHECK(licensed_rate_bps(3.0, 5e6) == doctest::Approx(1e7).epsilon(1e-12));
    CHECK_THROWS_AS(licensed_rate_bps(-0.1, 1e6), std::invalid_argument);
}

TEST_CASE("licensed rate is monotone and capped")
{
    double prev = -1.0;
    for (double sinr = 0.0; sinr < 5000.0; sinr += 13.7) {
        const double r = licensed_rate_bps(sinr, 1e6, 30.0);
        CHECK(r >= prev);
        prev = r;
    }
    CHECK(licensed_rate_bps(1e9, 1e6, 30.0) ==
          doctest::Approx(licensed_rate_bps(1000.0, 1e6, 30.0)));
}

TEST_CASE("wifi share frozen values")
{
    CHECK(wifi_share_bps(0, 100e6) == doctest::Approx(0.0));
    CHECK(wifi_share_bps(1, 100e6) == doctest::Approx(80e6));
    CHECK(wifi_share_bps(5, 100e6) == doctest::Approx(0.8 / 1.2 * 20e6).epsilon(1e-12));
    CHECK_THROWS_AS(wifi_share_bps(-1, 100e6), std::invalid_argument);
}

TEST_CASE("total wifi throughput degrades with contention")
{
    double prev_total = 1e18;
    for (std::int64_t n = 1; n <= 200; ++n) {
        const double total = wifi_share_bps(n, 100e6) * static_cast<double>(n);
        CHECK(total <= prev_total + 1e-6);
        CHECK(total <= 0.8 * 100e6 + 1e-6);
        prev_total = total;
    }
}

TEST_CASE("rsrp is reference power minus pathloss")
{
    CHECK(rsrp_dbm(30.0, 100.0) == doctest::Approx(-70.0));

    double prev = 1e9;
    for (int i = 1; i <= 100; ++i) {
        const double d = 10.0 + 5.0 * i;
        const double r = rsrp_dbm(30.0, pathloss_db(LinkKind::scbs_to_ue, d));
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("wifi cell state mirrors the share model")
{
    const WifiCell cell = wifi_cell_state(5, 100e6);
    CHECK(cell.contenders == 5);
    CHECK(cell.per_station_share_bps == doctest::Approx(wifi_share_bps(5, 100e6)));
    CHECK(cell.efficiency == doctest::Approx(0.8 / 1.2));
}
