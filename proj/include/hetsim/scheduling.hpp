#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hetsim {

enum class SchedulerKind { pf, edf, ps };

const char* scheduler_name(SchedulerKind k);

// One UE competing for a subband slot.
struct SchedCandidate {
    int ue = 0;
    std::int64_t remaining_bits = 0;
    double inst_rate_bps = 0.0;
    double avg_rate_bps = 0.0;
    std::int64_t deadline_tti = -1; // earliest pending deadline, -1: none
    std::int64_t budget_ttis = 0;   // delay budget of the deadline flow
};

struct SchedulerParams {
    double rate_floor = 1e3;     // bits/s
    double urgency_floor = 0.02; // lower clamp of the deadline urgency
};

// Traffic-aware selection: rank UEs by remaining-size over estimated rate,
// weight the rank fraction by deadline urgency, serve the argmin. Returns
// std::nullopt for an empty candidate set.
std::optional<int> proactive_schedule(std::span<const SchedCandidate> candidates, std::int64_t now,
                                      const SchedulerParams& params);

// Proportional fair: argmax instantaneous rate over smoothed rate.
std::optional<int> pf_schedule(std::span<const SchedCandidate> candidates,
                               const SchedulerParams& params);

// Earliest deadline first over deadline flows; PF fallback when none.
std::optional<int> edf_schedule(std::span<const SchedCandidate> candidates,
                                const SchedulerParams& params);

std::optional<int> schedule(SchedulerKind kind, std::span<const SchedCandidate> candidates,
                            std::int64_t now, const SchedulerParams& params);

// EWMA update applied to every UE each TTI; unscheduled UEs contribute a
// served rate of zero.
void update_avg_rate(std::span<double> avg_rate_bps, std::span<const double> served_rate_bps,
                     double ewma_factor);

} // namespace hetsim
