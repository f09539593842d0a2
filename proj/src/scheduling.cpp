#include "hetsim/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hetsim {

const char* scheduler_name(SchedulerKind k)
{
    switch (k) {
    case SchedulerKind::pf:
        return "pf";
    case SchedulerKind::edf:
        return "edf";
    case SchedulerKind::ps:
        return "ps";
    }
    return "?";
}

std::optional<int> proactive_schedule(std::span<const SchedCandidate> candidates, std::int64_t now,
                                      const SchedulerParams& params)
{
    if (candidates.empty())
        return std::nullopt;

    const std::size_t n = candidates.size();
    std::vector<double> tau(n);
    for (std::size_t i = 0; i < n; ++i) {
        tau[i] = static_cast<double>(candidates[i].remaining_bits) /
                 std::max(candidates[i].avg_rate_bps, params.rate_floor);
    }

    // Ascending remaining-size/rate order defines each UE's position.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (tau[a] != tau[b])
            return tau[a] < tau[b];
        return candidates[a].ue < candidates[b].ue;
    });

    std::size_t best = order[0];
    double best_metric = 0.0;
    bool first = true;
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t i = order[pos];
        const SchedCandidate& c = candidates[i];
        double urgency = 1.0;
        if (c.deadline_tti >= 0 && c.budget_ttis > 0) {
            const double slack =
                static_cast<double>(c.deadline_tti - now) / static_cast<double>(c.budget_ttis);
            urgency = std::max(params.urgency_floor, slack);
        }
        const double metric =
            (static_cast<double>(pos + 1) / static_cast<double>(n)) * urgency;
        if (first || metric < best_metric ||
            (metric == best_metric &&
             (tau[i] < tau[best] || (tau[i] == tau[best] && c.ue < candidates[best].ue)))) {
            best = i;
            best_metric = metric;
            first = false;
        }
    }
    return candidates[best].ue;
}

std::optional<int> pf_schedule(std::span<const SchedCandidate> candidates,
                               const SchedulerParams& params)
{
    if (candidates.empty())
        return std::nullopt;

    std::size_t best = 0;
    double best_priority = -1.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const SchedCandidate& c = candidates[i];
        const double priority = c.inst_rate_bps / std::max(c.avg_rate_bps, params.rate_floor);
        if (priority > best_priority ||
            (priority == best_priority && c.ue < candidates[best].ue)) {
            best = i;
            best_priority = priority;
        }
    }
    return candidates[best].ue;
}

std::optional<int> edf_schedule(std::span<const SchedCandidate> candidates,
                                const SchedulerParams& params)
{
    if (candidates.empty())
        return std::nullopt;

    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const SchedCandidate& c = candidates[i];
        if (c.deadline_tti < 0)
            continue;
        if (!best || c.deadline_tti < candidates[*best].deadline_tti ||
            (c.deadline_tti == candidates[*best].deadline_tti && c.ue < candidates[*best].ue))
            best = i;
    }
    if (best)
        return candidates[*best].ue;
    return pf_schedule(candidates, params);
}

std::optional<int> schedule(SchedulerKind kind, std::span<const SchedCandidate> candidates,
                            std::int64_t now, const SchedulerParams& params)
{
    switch (kind) {
    case SchedulerKind::pf:
        return pf_schedule(candidates, params);
    case SchedulerKind::edf:
        return edf_schedule(candidates, params);
    case SchedulerKind::ps:
        return proactive_schedule(candidates, now, params);
    }
    throw std::invalid_argument("schedule: unknown scheduler");
}

void update_avg_rate(std::span<double> avg_rate_bps, std::span<const double> served_rate_bps,
                     double ewma_factor)
{
    if (avg_rate_bps.size() != served_rate_bps.size())
        throw std::invalid_argument("update_avg_rate: size mismatch");
    for (std::size_t i = 0; i < avg_rate_bps.size(); ++i)
        avg_rate_bps[i] = (1.0 - ewma_factor) * avg_rate_bps[i] + ewma_factor * served_rate_bps[i];
}

} // namespace hetsim
