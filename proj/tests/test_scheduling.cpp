#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <vector>

#include "hetsim/rng.hpp"
#include "hetsim/scheduling.hpp"

using namespace hetsim;

namespace {
const SchedulerParams params{1e3, 0.02};
}

TEST_CASE("all schedulers return the single candidate")
{
    const std::vector<SchedCandidate> one = {{7, 1000, 1e6, 5e5, -1, 0}};
    CHECK(pf_schedule(one, params) == 7);
    CHECK(edf_schedule(one, params) == 7);
    CHECK(proactive_schedule(one, 0, params) == 7);

    const std::vector<SchedCandidate> none;
    CHECK_FALSE(pf_schedule(none, params).has_value());
    CHECK_FALSE(edf_schedule(none, params).has_value());
    CHECK_FALSE(proactive_schedule(none, 0, params).has_value());
}

TEST_CASE("proactive metric prefers the smaller remaining-over-rate ratio")
{
    // tau = 1 Mb / 1 Mbps = 1 s vs 4 Mb / 2 Mbps = 2 s; D = 0.5 vs 1.0.
    std::vector<SchedCandidate> c = {
        {0, 1'000'000, 0.0, 1e6, -1, 0},
        {1, 4'000'000, 0.0, 2e6, -1, 0},
    };
    CHECK(proactive_schedule(c, 0, params) == 0);
}

TEST_CASE("deadline urgency outweighs a better ratio")
{
    // VoIP one TTI from its 50-TTI budget vs an FTP transfer with the
    // smaller ratio: D_voip = (2/2)*(1/50) = 0.02 < D_ftp = (1/2)*1 = 0.5.
    std::vector<SchedCandidate> c = {
        {0, 1'000'000, 0.0, 2e6, -1, 0},   // ftp, tau = 0.5 s, rank 1
        {1, 1'280, 0.0, 1e3, 100 + 1, 50}, // voip, tau = 1.28 s, rank 2
    };
    CHECK(proactive_schedule(c, 100, params) == 1);
}

TEST_CASE("proactive choice is invariant under rescaling every ratio")
{
    RngStream rng(3, "sched");
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<SchedCandidate> base;
        const int n = 2 + static_cast<int>(rng.uniform_int(6));
        for (int i = 0; i < n; ++i) {
            SchedCandidate c;
            c.ue = i;
            c.remaining_bits = 1 + rng.uniform_int(1'000'000);
            c.avg_rate_bps = rng.uniform(1e4, 1e7);
            c.deadline_tti = rng.u01() < 0.5 ? rng.uniform_int(200) : -1;
            c.budget_ttis = 50;
            base.push_back(c);
        }
        auto scaled = base;
        for (SchedCandidate& c : scaled)
            c.remaining_bits *= 7; // scales every tau by the same factor
        CHECK(proactive_schedule(base, 0, params) == proactive_schedule(scaled, 0, params));
    }
}

TEST_CASE("pf reduces to max-rate or min-average in the degenerate cases")
{
    std::vector<SchedCandidate> equal_avg = {
        {0, 1, 2e6, 1e6, -1, 0},
        {1, 1, 3e6, 1e6, -1, 0},
    };
    CHECK(pf_schedule(equal_avg, params) == 1);

    std::vector<SchedCandidate> equal_rate = {
        {0, 1, 2e6, 1e6, -1, 0},
        {1, 1, 2e6, 4e5, -1, 0},
    };
    CHECK(pf_schedule(equal_rate, params) == 1);
}

TEST_CASE("pf ratio comparison on the worked example")
{
    // rates (2, 1), averages (1, 0.4): 1/0.4 > 2/1, so the second wins.
    std::vector<SchedCandidate> c = {
        {0, 1, 2e6, 1e6, -1, 0},
        {1, 1, 1e6, 4e5, -1, 0},
    };
    CHECK(pf_schedule(c, params) == 1);
}

TEST_CASE("edf picks the earliest deadline and falls back to pf")
{
    std::vector<SchedCandidate> c = {
        {0, 1, 1e6, 1e6, 40, 50},
        {1, 1, 1e6, 1e6, 20, 50},
    };
    CHECK(edf_schedule(c, params) == 1);

    std::vector<SchedCandidate> no_deadline = {
        {0, 1, 2e6, 1e6, -1, 0},
        {1, 1, 1e6, 4e5, -1, 0},
    };
    CHECK(edf_schedule(no_deadline, params) == pf_schedule(no_deadline, params));

    std::vector<SchedCandidate> mixed = {
        {0, 1, 9e6, 1e3, -1, 0}, // ftp with a huge pf priority
        {1, 1, 1e6, 1e6, 30, 50},
    };
    CHECK(edf_schedule(mixed, params) == 1);
}

TEST_CASE("every scheduler returns a member of its candidate set")
{
    RngStream rng(11, "sched-membership");
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<SchedCandidate> c;
        const int n = 1 + static_cast<int>(rng.uniform_int(8));
        for (int i = 0; i < n; ++i) {
            c.push_back({static_cast<int>(rng.uniform_int(1000)), 1 + rng.uniform_int(1'000'000),
                         rng.uniform(1e4, 1e7), rng.uniform(1e3, 1e7),
                         rng.u01() < 0.5 ? rng.uniform_int(500) : -1, 60});
        }
        for (SchedulerKind kind : {SchedulerKind::pf, SchedulerKind::edf, SchedulerKind::ps}) {
            const auto pick = schedule(kind, c, 0, params);
            REQUIRE(pick.has_value());
            bool member = false;
            for (const SchedCandidate& cand : c)
                member = member || cand.ue == *pick;
            CHECK(member);
        }
    }
}

TEST_CASE("ewma update frozen values")
{
    std::vector<double> avg = {1e6};
    std::vector<double> served = {2e6};
    update_avg_rate(avg, served, 0.1);
    CHECK(avg[0] == doctest::Approx(1.1e6));

    avg = {5e5};
    update_avg_rate(avg, served, 1.0);
    CHECK(avg[0] == doctest::Approx(2e6)); // alpha = 1 keeps only the last rate

    avg = {1e6};
    served = {0.0};
    for (int i = 0; i < 200; ++i)
        update_avg_rate(avg, served, 0.1);
    CHECK(avg[0] < 1.0); // geometric decay toward zero
}

TEST_CASE("pf serves symmetric users within five percent of equal share")
{
    const int n = 4;
    std::vector<double> avg(n, 0.0);
    std::vector<std::int64_t> services(n, 0);
    const double rate = 1e6;
    for (int tti = 0; tti < 10000; ++tti) {
        std::vector<SchedCandidate> c;
        for (int i = 0; i < n; ++i)
            c.push_back({i, 1'000'000'000, rate, avg[static_cast<std::size_t>(i)], -1, 0});
        const auto pick = pf_schedule(c, params);
        REQUIRE(pick.has_value());
        ++services[static_cast<std::size_t>(*pick)];
        std::vector<double> served(n, 0.0);
        served[static_cast<std::size_t>(*pick)] = rate;
        update_avg_rate(avg, served, 0.05);
    }
    for (int i = 0; i < n; ++i) {
        const double share = static_cast<double>(services[static_cast<std::size_t>(i)]) / 10000.0;
        CHECK(share == doctest::Approx(0.25).epsilon(0.05));
    }
}
