#include "hetsim/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace hetsim {

const std::array<TrafficClass, 5>& traffic_classes()
{
    static const std::array<TrafficClass, 5> classes = {{
        {TrafficType::ftp, "FTP", "best-effort", 10.0, -1, true},
        {TrafficType::http, "HTTP", "interactive", 20.0, -1, true},
        {TrafficType::video_streaming, "VideoStreaming", "streaming", 20.0, 100, false},
        {TrafficType::voip, "VoIP", "real-time", 30.0, 50, false},
        {TrafficType::gaming, "Gaming", "interactive-real-time", 20.0, 60, false},
    }};
    return classes;
}

const TrafficClass& traffic_class(TrafficType type)
{
    return traffic_classes()[static_cast<std::size_t>(type)];
}

bool is_delay_tolerant(TrafficType type)
{
    return traffic_class(type).delay_tolerant;
}

std::array<std::int64_t, 5> mix_counts(std::int64_t n_ue)
{
    if (n_ue < 1)
        throw std::invalid_argument("mix_counts: n_ue must be >= 1");

    std::array<std::int64_t, 5> counts{};
    std::array<double, 5> remainders{};
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < 5; ++i) {
        const double exact = traffic_classes()[i].mix_pct / 100.0 * static_cast<double>(n_ue);
        counts[i] = static_cast<std::int64_t>(std::floor(exact));
        remainders[i] = exact - static_cast<double>(counts[i]);
        assigned += counts[i];
    }

    std::array<std::size_t, 5> order = {0, 1, 2, 3, 4};
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (remainders[a] != remainders[b])
            return remainders[a] > remainders[b];
        return traffic_classes()[a].mix_pct > traffic_classes()[b].mix_pct;
    });

    for (std::size_t i = 0; assigned < n_ue; ++i, ++assigned)
        ++counts[order[i % 5]];
    return counts;
}

std::vector<TrafficType> assign_mix(std::int64_t n_ue, std::uint64_t seed)
{
    const auto counts = mix_counts(n_ue);
    std::vector<TrafficType> classes;
    classes.reserve(static_cast<std::size_t>(n_ue));
    for (std::size_t i = 0; i < 5; ++i)
        classes.insert(classes.end(), static_cast<std::size_t>(counts[i]),
                       static_cast<TrafficType>(i));

    RngStream rng(seed, "traffic.mix");
    for (std::size_t i = classes.size(); i > 1; --i)
        std::swap(classes[i - 1], classes[static_cast<std::size_t>(rng.uniform_int(
                                      static_cast<std::int64_t>(i)))]);
    return classes;
}

ArrivalProcess::ArrivalProcess(TrafficType type, const TrafficParams& params, RngStream stream)
    : type_(type), params_(params), rng_(stream)
{
}

std::int64_t ArrivalProcess::deadline_for(std::int64_t arrival) const
{
    switch (type_) {
    case TrafficType::video_streaming:
        return arrival + params_.video_budget_ms;
    case TrafficType::voip:
        return arrival + params_.voip_budget_ms;
    case TrafficType::gaming:
        return arrival + params_.gaming_budget_ms;
    default:
        return -1;
    }
}

std::vector<FlowState> ArrivalProcess::poll(std::int64_t tti, bool queue_empty)
{
    std::vector<FlowState> arrivals;
    auto emit = [&](std::int64_t bits, std::int64_t arrival) {
        FlowState flow;
        flow.remaining_bits = bits;
        flow.total_bits = bits;
        flow.arrival_tti = arrival;
        flow.deadline_tti = deadline_for(arrival);
        arrivals.push_back(flow);
    };

    switch (type_) {
    case TrafficType::ftp:
        // One file in flight; the next one starts once the queue drains.
        if (queue_empty)
            emit(params_.ftp_file_bits, tti);
        break;

    case TrafficType::http: {
        if (tti == 0 && !waiting_) {
            // First page is pending from the start of the run.
            waiting_ = true;
            next_event_tti_ = 0;
        }
        if (waiting_ && tti >= next_event_tti_) {
            const double mu = std::log(params_.http_page_mean_bits) -
                              0.5 * params_.http_page_sigma * params_.http_page_sigma;
            double bits = rng_.lognormal(mu, params_.http_page_sigma);
            bits = std::clamp(bits, 1.0, params_.http_page_max_bits);
            emit(static_cast<std::int64_t>(std::llround(bits)), tti);
            waiting_ = false;
        } else if (!waiting_ && queue_empty) {
            // Page finished: arm the reading timer for the next one.
            waiting_ = true;
            next_event_tti_ =
                tti + 1 +
                static_cast<std::int64_t>(std::llround(rng_.exponential(params_.http_reading_mean_ms)));
        }
        break;
    }

    case TrafficType::video_streaming:
        if (tti >= next_event_tti_) {
            const double chunk_bits =
                params_.video_rate_bps * static_cast<double>(params_.video_chunk_ms) / 1000.0;
            emit(static_cast<std::int64_t>(std::llround(chunk_bits)), tti);
            next_event_tti_ = tti + params_.video_chunk_ms;
        }
        break;

    case TrafficType::voip:
        if (tti >= next_event_tti_) {
            emit(params_.voip_packet_bits, tti);
            next_event_tti_ = tti + params_.voip_period_ms;
        }
        break;

    case TrafficType::gaming:
        if (tti >= next_event_tti_) {
            emit(params_.gaming_packet_bits, tti);
            const double jitter = rng_.lognormal(0.0, params_.gaming_jitter_sigma);
            next_event_tti_ = tti + params_.gaming_period_ms +
                              static_cast<std::int64_t>(std::llround(jitter)) - 1;
        }
        break;
    }
    return arrivals;
}

namespace {

std::int64_t serve_selected(std::vector<FlowState>& flows, std::int64_t bits,
                            const std::function<bool(const FlowState&)>& eligible)
{
    if (bits <= 0)
        return 0;

    std::vector<std::size_t> order;
    order.reserve(flows.size());
    for (std::size_t i = 0; i < flows.size(); ++i)
        if (eligible(flows[i]))
            order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const std::int64_t da = flows[a].deadline_tti < 0 ? INT64_MAX : flows[a].deadline_tti;
        const std::int64_t db = flows[b].deadline_tti < 0 ? INT64_MAX : flows[b].deadline_tti;
        if (da != db)
            return da < db;
        return flows[a].arrival_tti < flows[b].arrival_tti;
    });

    std::int64_t served = 0;
    for (std::size_t idx : order) {
        if (bits == served)
            break;
        FlowState& flow = flows[idx];
        const std::int64_t take = std::min(flow.remaining_bits, bits - served);
        flow.remaining_bits -= take;
        served += take;
    }
    std::erase_if(flows, [](const FlowState& f) { return f.remaining_bits == 0; });
    return served;
}

} // namespace

std::int64_t serve_flow_bits(std::vector<FlowState>& flows, std::int64_t bits)
{
    return serve_selected(flows, bits, [](const FlowState&) { return true; });
}

std::int64_t serve_flow_bits(std::vector<FlowState>& flows, std::int64_t bits, Rat rat)
{
    return serve_selected(flows, bits, [rat](const FlowState& f) { return f.rat == rat; });
}

DropResult drop_expired_flows(std::vector<FlowState>& flows, std::int64_t now)
{
    DropResult result;
    for (const FlowState& f : flows) {
        if (f.deadline_tti >= 0 && f.deadline_tti < now) {
            ++result.packets;
            result.bits += f.remaining_bits;
        }
    }
    std::erase_if(flows,
                  [now](const FlowState& f) { return f.deadline_tti >= 0 && f.deadline_tti < now; });
    return result;
}

std::int64_t pending_bits(const std::vector<FlowState>& flows)
{
    std::int64_t total = 0;
    for (const FlowState& f : flows)
        total += f.remaining_bits;
    return total;
}

std::int64_t pending_bits(const std::vector<FlowState>& flows, Rat rat)
{
    std::int64_t total = 0;
    for (const FlowState& f : flows)
        if (f.rat == rat)
            total += f.remaining_bits;
    return total;
}

std::int64_t earliest_deadline(const std::vector<FlowState>& flows, Rat rat)
{
    std::int64_t best = -1;
    for (const FlowState& f : flows) {
        if (f.rat != rat || f.deadline_tti < 0)
            continue;
        if (best < 0 || f.deadline_tti < best)
            best = f.deadline_tti;
    }
    return best;
}

} // namespace hetsim
