#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hetsim/config.hpp"
#include "hetsim/rng.hpp"

namespace hetsim {

enum class TrafficType { ftp = 0, http, video_streaming, voip, gaming };

enum class Rat { cellular, wifi };

struct TrafficClass {
    TrafficType type;
    const char* name;
    const char* category;
    double mix_pct;               // share of UEs
    std::int64_t delay_budget_ms; // -1: none
    bool delay_tolerant;
};

// Fixed five-class mix: FTP 10%, HTTP 20%, video 20%, VoIP 30%, gaming 20%.
const std::array<TrafficClass, 5>& traffic_classes();

const TrafficClass& traffic_class(TrafficType type);

bool is_delay_tolerant(TrafficType type);

// Class counts for n UEs: floor(pct * n) with largest-remainder correction
// so the counts sum to exactly n. Remainder ties go to the larger share.
std::array<std::int64_t, 5> mix_counts(std::int64_t n_ue);

// Per-UE classes, assignment order shuffled by the seed-derived stream.
std::vector<TrafficType> assign_mix(std::int64_t n_ue, std::uint64_t seed);

struct FlowState {
    std::int64_t remaining_bits = 0;
    std::int64_t total_bits = 0;
    std::int64_t arrival_tti = 0;
    std::int64_t deadline_tti = -1; // -1: no deadline
    Rat rat = Rat::cellular;
};

// Per-UE arrival generator with class-specific state. Deterministic given
// its stream; one TTI is 1 ms.
class ArrivalProcess {
public:
    ArrivalProcess(TrafficType type, const TrafficParams& params, RngStream stream);

    // queue_empty: the UE currently has no pending bits (gates FTP/HTTP).
    std::vector<FlowState> poll(std::int64_t tti, bool queue_empty);

    TrafficType type() const { return type_; }

private:
    std::int64_t deadline_for(std::int64_t arrival) const;

    TrafficType type_;
    TrafficParams params_;
    RngStream rng_;
    std::int64_t next_event_tti_ = 0; // next periodic slot / http page arrival
    bool waiting_ = false;            // http: reading timer armed
};

// Drains up to `bits` from the flows, earliest deadline first, then oldest
// arrival. Returns the number of bits actually served.
std::int64_t serve_flow_bits(std::vector<FlowState>& flows, std::int64_t bits);

// Same, restricted to flows assigned to one RAT.
std::int64_t serve_flow_bits(std::vector<FlowState>& flows, std::int64_t bits, Rat rat);

struct DropResult {
    std::int64_t packets = 0;
    std::int64_t bits = 0;
};

// Removes flows whose deadline has passed (deadline < now).
DropResult drop_expired_flows(std::vector<FlowState>& flows, std::int64_t now);

std::int64_t pending_bits(const std::vector<FlowState>& flows);
std::int64_t pending_bits(const std::vector<FlowState>& flows, Rat rat);

// Earliest pending deadline, or -1 when no deadline flow is pending.
std::int64_t earliest_deadline(const std::vector<FlowState>& flows, Rat rat);

} // namespace hetsim
