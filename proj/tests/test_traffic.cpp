#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "hetsim/traffic.hpp"

using namespace hetsim;

TEST_CASE("table mix at 30 UEs is {3,6,6,9,6}")
{
    const auto counts = mix_counts(30);
    CHECK(counts[0] == 3); // FTP
    CHECK(counts[1] == 6); // HTTP
    CHECK(counts[2] == 6); // Video
    CHECK(counts[3] == 9); // VoIP
    CHECK(counts[4] == 6); // Gaming
}

TEST_CASE("table mix at 10 UEs is {1,2,2,3,2}")
{
    const auto counts = mix_counts(10);
    CHECK(counts == std::array<std::int64_t, 5>{1, 2, 2, 3, 2});
}

TEST_CASE("a single UE gets the largest share class")
{
    const auto classes = assign_mix(1, 5);
    REQUIRE(classes.size() == 1);
    CHECK(classes[0] == TrafficType::voip);
}

TEST_CASE("counts always sum to N and floors deviate by less than one")
{
    for (std::int64_t n = 1; n <= 300; ++n) {
        const auto counts = mix_counts(n);
        std::int64_t total = 0;
        for (std::size_t i = 0; i < 5; ++i) {
            total += counts[i];
            const double exact = traffic_classes()[i].mix_pct / 100.0 * static_cast<double>(n);
            const double floored = std::floor(exact);
            CHECK(std::abs(floored - exact) < 1.0);
            CHECK(counts[i] >= static_cast<std::int64_t>(floored));
            CHECK(counts[i] <= static_cast<std::int64_t>(floored) + 1);
        }
        CHECK(total == n);
    }
}

TEST_CASE("assignment order is seed-deterministic")
{
    const auto a = assign_mix(45, 9);
    const auto b = assign_mix(45, 9);
    CHECK(a == b);
    const auto c = assign_mix(45, 10);
    CHECK(a != c); // overwhelmingly likely under a different seed
}

TEST_CASE("delay tolerance is exactly FTP and HTTP")
{
    CHECK(is_delay_tolerant(TrafficType::ftp));
    CHECK(is_delay_tolerant(TrafficType::http));
    CHECK_FALSE(is_delay_tolerant(TrafficType::video_streaming));
    CHECK_FALSE(is_delay_tolerant(TrafficType::voip));
    CHECK_FALSE(is_delay_tolerant(TrafficType::gaming));
}

TEST_CASE("class table carries finite budgets only for deadline classes")
{
    for (const TrafficClass& c : traffic_classes()) {
        if (c.delay_tolerant)
            CHECK(c.delay_budget_ms == -1);
        else
            CHECK(c.delay_budget_ms > 0);
    }
}

TEST_CASE("voip arrivals are strictly periodic")
{
    TrafficParams params;
    ArrivalProcess proc(TrafficType::voip, params, RngStream(1, "t"));
    for (std::int64_t tti = 0; tti < 200; ++tti) {
        const auto arrivals = proc.poll(tti, true);
        if (tti % params.voip_period_ms == 0) {
            REQUIRE(arrivals.size() == 1);
            CHECK(arrivals[0].remaining_bits == params.voip_packet_bits);
            CHECK(arrivals[0].deadline_tti == tti + params.voip_budget_ms);
        } else {
            CHECK(arrivals.empty());
        }
    }
}

TEST_CASE("ftp issues a new file only when the previous one is done")
{
    TrafficParams params;
    ArrivalProcess proc(TrafficType::ftp, params, RngStream(1, "t"));
    auto first = proc.poll(0, true);
    REQUIRE(first.size() == 1);
    CHECK(first[0].remaining_bits == params.ftp_file_bits);
    for (std::int64_t tti = 1; tti < 50; ++tti)
        CHECK(proc.poll(tti, false).empty());
    CHECK(proc.poll(50, true).size() == 1);
}

TEST_CASE("video chunks arrive on a fixed cadence with their budget")
{
    TrafficParams params;
    ArrivalProcess proc(TrafficType::video_streaming, params, RngStream(1, "t"));
    std::int64_t chunks = 0;
    for (std::int64_t tti = 0; tti < 400; ++tti) {
        const auto arrivals = proc.poll(tti, false);
        if (!arrivals.empty()) {
            ++chunks;
            CHECK(arrivals[0].deadline_tti == tti + params.video_budget_ms);
            CHECK(arrivals[0].remaining_bits ==
                  static_cast<std::int64_t>(params.video_rate_bps * params.video_chunk_ms / 1000));
        }
    }
    CHECK(chunks == 10);
}

TEST_CASE("seeded arrival streams replay exactly and differ across UEs")
{
    TrafficParams params;
    auto trace = [&](RngStream stream) {
        ArrivalProcess proc(TrafficType::gaming, params, stream);
        std::vector<std::int64_t> arrivals;
        for (std::int64_t tti = 0; tti < 500; ++tti)
            if (!proc.poll(tti, false).empty())
                arrivals.push_back(tti);
        return arrivals;
    };
    CHECK(trace(RngStream(7, "traffic.ue0")) == trace(RngStream(7, "traffic.ue0")));
    CHECK(trace(RngStream(7, "traffic.ue0")) != trace(RngStream(7, "traffic.ue1")));
}

TEST_CASE("flow service drains by deadline then arrival and never goes negative")
{
    std::vector<FlowState> flows;
    flows.push_back({1000, 1000, 0, 90, Rat::cellular});
    flows.push_back({1000, 1000, 1, 50, Rat::cellular});
    flows.push_back({1000, 1000, 2, -1, Rat::cellular});

    CHECK(serve_flow_bits(flows, 1500) == 1500);
    // Deadline 50 drained first, then deadline 90 partially.
    REQUIRE(flows.size() == 2);
    CHECK(flows[0].deadline_tti == 90);
    CHECK(flows[0].remaining_bits == 500);
    CHECK(flows[1].deadline_tti == -1);

    CHECK(serve_flow_bits(flows, 10'000) == 1500);
    CHECK(flows.empty());
    CHECK(serve_flow_bits(flows, 10) == 0);
}

TEST_CASE("rat-filtered service only touches matching flows")
{
    std::vector<FlowState> flows;
    flows.push_back({500, 500, 0, -1, Rat::wifi});
    flows.push_back({500, 500, 0, -1, Rat::cellular});
    CHECK(serve_flow_bits(flows, 1000, Rat::cellular) == 500);
    REQUIRE(flows.size() == 1);
    CHECK(flows[0].rat == Rat::wifi);
}

TEST_CASE("expired flows are dropped and reported")
{
    std::vector<FlowState> flows;
    flows.push_back({100, 100, 0, 10, Rat::cellular});
    flows.push_back({200, 200, 0, 20, Rat::cellular});
    flows.push_back({300, 300, 0, -1, Rat::cellular});
    const DropResult drops = drop_expired_flows(flows, 15);
    CHECK(drops.packets == 1);
    CHECK(drops.bits == 100);
    CHECK(flows.size() == 2);
    // A flow is still servable on its deadline TTI.
    const DropResult at_deadline = drop_expired_flows(flows, 20);
    CHECK(at_deadline.packets == 0);
}
