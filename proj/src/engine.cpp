#include "hetsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hetsim/util.hpp"

namespace hetsim {

namespace {

constexpr double kTtiSeconds = 1e-3;

std::int64_t budget_ttis_for(TrafficType type, const TrafficParams& params)
{
    switch (type) {
    case TrafficType::video_streaming:
        return params.video_budget_ms;
    case TrafficType::voip:
        return params.voip_budget_ms;
    case TrafficType::gaming:
        return params.gaming_budget_ms;
    default:
        return -1;
    }
}

double l1_distance(std::span<const double> a, std::span<const double> b)
{
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        total += std::abs(a[i] - b[i]);
    return total;
}

double positive_regret_l1(std::span<const double> regrets)
{
    double total = 0.0;
    for (double r : regrets)
        total += std::max(0.0, r);
    return total;
}

} // namespace

double percentile(std::span<const double> sorted_ascending, double p)
{
    if (sorted_ascending.empty())
        throw std::invalid_argument("percentile: empty sample");
    p = std::clamp(p, 0.0, 100.0);
    const std::size_t n = sorted_ascending.size();
    const double rank = p / 100.0 * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(rank));
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double frac = rank - static_cast<double>(lo);
    return sorted_ascending[lo] + frac * (sorted_ascending[hi] - sorted_ascending[lo]);
}

std::vector<double> compute_cdf(std::span<const double> values)
{
    if (values.empty())
        throw std::invalid_argument("compute_cdf: empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

World::World(RunSpec spec) : spec_(std::move(spec))
{
    spec_.config.validate();
    topo_ = build_scenario(spec_.config);
    init(assign_mix(static_cast<std::int64_t>(topo_.ue_positions.size()),
                    static_cast<std::uint64_t>(spec_.config.seed)));
}

World::World(RunSpec spec, Topology topology, std::vector<TrafficType> classes)
    : spec_(std::move(spec)), topo_(std::move(topology))
{
    if (classes.size() != topo_.ue_positions.size())
        throw std::invalid_argument("World: one traffic class per UE required");
    init(std::move(classes));
}

void World::init(std::vector<TrafficType> classes)
{
    const ScenarioConfig& cfg = spec_.config;
    radio_ = RadioParams{cfg.noise_density_dbm_hz, cfg.sinr_cap_db, cfg.pathloss_floor_db};
    utility_cap_bps_ = licensed_subband_hz() * std::log2(1.0 + db_to_linear(cfg.sinr_cap_db));

    const std::uint64_t seed = static_cast<std::uint64_t>(cfg.seed);
    ues_.reserve(classes.size());
    for (std::size_t u = 0; u < classes.size(); ++u) {
        RngStream stream(seed, "traffic.ue" + std::to_string(u));
        ues_.emplace_back(classes[u], cfg.traffic, stream);
        ues_.back().pos = topo_.ue_positions[u];
        ues_.back().heading_rad = topo_.ue_heading_rad[u];
    }

    const LearnerConfig lcfg{cfg.kappa0, cfg.kappa_tau, cfg.kappa_constant, cfg.utility_min,
                             cfg.utility_max};
    const ActionSet lic_actions = enumerate_actions(cfg, Band::licensed);
    const ActionSet unlic_actions = enumerate_actions(cfg, Band::unlicensed);
    scbs_.resize(topo_.scbs_positions.size());
    for (std::size_t k = 0; k < scbs_.size(); ++k) {
        ScbsState& s = scbs_[k];
        s.licensed = LearnerState::init(lic_actions, lcfg);
        s.unlicensed = LearnerState::init(unlic_actions, lcfg);
        s.lic_rng = RngStream(seed, "learner." + std::to_string(k) + ".licensed");
        s.unlic_rng = RngStream(seed, "learner." + std::to_string(k) + ".unlicensed");
        s.clock = CrossSystemClock{cfg.cellular_period_ttis, 0, 0.0, cfg.wifi_summary_alpha};
        s.epoch_cell_bits.assign(ues_.size(), 0);
        s.tti_wifi_bits.assign(ues_.size(), 0);
    }

    if (cfg.shadowing) {
        RngStream stream(seed, "shadow");
        shadow_.resize((1 + scbs_.size()) * std::max<std::size_t>(ues_.size(), 1));
        for (double& x : shadow_)
            x = cfg.shadowing_sigma_db * stream.normal();
    }
}

double World::shadow_db(int station, int ue) const
{
    if (shadow_.empty())
        return 0.0;
    return shadow_[static_cast<std::size_t>(station) * ues_.size() + static_cast<std::size_t>(ue)];
}

double World::licensed_subband_hz() const
{
    return spec_.config.bandwidth_licensed / static_cast<double>(spec_.config.num_subbands_licensed);
}

double World::wifi_subband_capacity_bps() const
{
    return spec_.config.bandwidth_unlicensed /
           static_cast<double>(spec_.config.num_subbands_unlicensed) *
           spec_.config.wifi_spectral_efficiency;
}

const std::vector<double>& World::cellular_strategy(int scbs) const
{
    return scbs_[static_cast<std::size_t>(scbs)].licensed.strategy;
}

double World::station_rsrp(int ue, int station) const
{
    const ScenarioConfig& cfg = spec_.config;
    const Vec2& pos = ues_[static_cast<std::size_t>(ue)].pos;
    if (station == 0) {
        const double pl = pathloss_db(LinkKind::macro_to_ue, distance(pos, topo_.mbs_position),
                                      cfg.pathloss_floor_db) +
                          shadow_db(0, ue);
        return rsrp_dbm(cfg.macro_power, pl);
    }
    const int k = station - 1;
    const double pl = pathloss_db(LinkKind::scbs_to_ue,
                                  distance(pos, topo_.scbs_positions[static_cast<std::size_t>(k)]),
                                  cfg.pathloss_floor_db) +
                      shadow_db(station, ue);
    return rsrp_dbm(cfg.max_power, pl);
}

double World::unlicensed_rsrp(int ue, int scbs) const
{
    const ScenarioConfig& cfg = spec_.config;
    const Vec2& pos = ues_[static_cast<std::size_t>(ue)].pos;
    const double pl =
        pathloss_db(LinkKind::scbs_to_ue,
                    distance(pos, topo_.scbs_positions[static_cast<std::size_t>(scbs)]),
                    cfg.pathloss_floor_db) +
        shadow_db(scbs + 1, ue);
    return rsrp_dbm(cfg.unlicensed_power, pl);
}

bool World::wifi_available_for(const UeState& ue) const
{
    if (!policy_uses_wifi(spec_.policy) || ue.serving_station == 0)
        return false;
    const int k = ue.serving_station - 1;
    return distance(ue.pos, topo_.scbs_positions[static_cast<std::size_t>(k)]) <=
           spec_.config.wifi_coverage_radius;
}

std::int64_t World::wifi_cell_contenders(int scbs) const
{
    std::int64_t count = 0;
    for (const UeState& ue : ues_) {
        if (ue.serving_station == scbs + 1 && pending_bits(ue.flows, Rat::wifi) > 0)
            ++count;
    }
    return count;
}

bool World::steer_flow(std::size_t ue_index, FlowState& flow)
{
    UeState& ue = ues_[ue_index];
    if (flow.rat == Rat::wifi || !wifi_available_for(ue))
        return false;
    if (!is_delay_tolerant(ue.klass))
        return false;

    const int k = ue.serving_station - 1;
    bool admit = false;
    switch (spec_.policy) {
    case PolicyKind::hetnet_wifi_load:
    case PolicyKind::proposed:
        admit = admit_wifi_load_based(true, wifi_cell_contenders(k), spec_.config.load_threshold);
        break;
    case PolicyKind::hetnet_wifi_coverage:
        admit = admit_wifi_coverage_based(true, unlicensed_rsrp(static_cast<int>(ue_index), k),
                                          spec_.config.rsrp_threshold);
        break;
    default:
        return false;
    }
    if (admit) {
        flow.rat = Rat::wifi;
        if (!is_delay_tolerant(ue.klass))
            ++intolerant_wifi_assignments_; // decision-log scan target
    }
    return admit;
}

void World::reassociate()
{
    const ScenarioConfig& cfg = spec_.config;
    for (std::size_t u = 0; u < ues_.size(); ++u) {
        UeState& ue = ues_[u];
        if (spec_.policy == PolicyKind::macro_only || scbs_.empty()) {
            ue.serving_station = 0;
            continue;
        }
        std::vector<StationRsrp> stations;
        stations.reserve(1 + scbs_.size());
        stations.push_back({0, station_rsrp(static_cast<int>(u), 0), 0.0});
        for (std::size_t k = 0; k < scbs_.size(); ++k) {
            const double bias = spec_.learner == LearnerKind::random
                                    ? 0.0
                                    : scbs_[k].licensed.actions[scbs_[k].lic_action].bias_db;
            stations.push_back(
                {static_cast<int>(k) + 1, station_rsrp(static_cast<int>(u), static_cast<int>(k) + 1),
                 bias});
        }
        ue.serving_station = associate_cellular(stations);
    }

    // Flows steered to WiFi follow the serving SCBS; anything no longer in
    // coverage falls back to cellular.
    for (UeState& ue : ues_) {
        if (wifi_available_for(ue))
            continue;
        for (FlowState& f : ue.flows)
            f.rat = Rat::cellular;
    }

    // Policy re-application for pending delay-tolerant flows.
    if (policy_uses_wifi(spec_.policy)) {
        for (std::size_t u = 0; u < ues_.size(); ++u) {
            for (FlowState& f : ues_[u].flows)
                steer_flow(u, f);
        }
    }
    (void)cfg;
}

void World::steer_new_flows(std::span<const std::size_t> ue_order)
{
    if (!policy_uses_wifi(spec_.policy))
        return;
    for (std::size_t u : ue_order) {
        for (FlowState& f : ues_[u].flows) {
            if (f.arrival_tti == tti_ && f.rat == Rat::cellular)
                steer_flow(u, f);
        }
    }
}

void World::sample_actions()
{
    if (spec_.policy == PolicyKind::macro_only || scbs_.empty())
        return;
    const ScenarioConfig& cfg = spec_.config;
    for (ScbsState& s : scbs_) {
        if (spec_.learner == LearnerKind::random) {
            if (tti_ == 0) {
                // Static benchmark: one uniformly drawn subband per band,
                // full power, no range expansion.
                const std::int64_t lic_sb = s.lic_rng.uniform_int(cfg.num_subbands_licensed);
                const std::int64_t levels = cfg.power_levels;
                const std::int64_t biases = cfg.bias_levels;
                s.lic_action = static_cast<std::size_t>(((levels - 1) * cfg.num_subbands_licensed +
                                                         lic_sb) *
                                                        biases);
                const std::int64_t unlic_sb = s.unlic_rng.uniform_int(cfg.num_subbands_unlicensed);
                s.unlic_action =
                    static_cast<std::size_t>((levels - 1) * cfg.num_subbands_unlicensed + unlic_sb);
            }
            continue;
        }
        const bool cellular_due =
            spec_.learner == LearnerKind::independent || tti_ % cfg.cellular_period_ttis == 0;
        if (cellular_due)
            s.lic_action = sample_action(s.licensed, s.lic_rng);
        if (policy_uses_wifi(spec_.policy))
            s.unlic_action = sample_action(s.unlicensed, s.unlic_rng);
    }
}

void World::serve_licensed(TtiMetrics& metrics)
{
    const ScenarioConfig& cfg = spec_.config;
    const double subband_hz = licensed_subband_hz();
    const double noise = noise_power_mw(cfg.noise_density_dbm_hz, subband_hz);
    const int n_subbands = static_cast<int>(cfg.num_subbands_licensed);

    // Transmitter snapshot for this TTI: a station transmits on its
    // subband(s) whenever it entered the TTI with backlogged cellular UEs.
    licensed_tx_.clear();
    licensed_tx_station_.clear();
    auto station_has_backlog = [&](int station) {
        for (const UeState& ue : ues_)
            if (ue.serving_station == station && pending_bits(ue.flows, Rat::cellular) > 0)
                return true;
        return false;
    };
    const bool macro_active = station_has_backlog(0);
    if (macro_active) {
        const double per_subband_mw = dbm_to_mw(cfg.macro_power) / n_subbands;
        for (int sb = 1; sb <= n_subbands; ++sb) {
            licensed_tx_.push_back(
                {topo_.mbs_position, per_subband_mw, LinkKind::macro_to_ue, sb, 0.0});
            licensed_tx_station_.push_back(0);
        }
    }
    if (spec_.policy != PolicyKind::macro_only) {
        for (std::size_t k = 0; k < scbs_.size(); ++k) {
            if (!station_has_backlog(static_cast<int>(k) + 1))
                continue;
            const Action& a = scbs_[k].licensed.actions[scbs_[k].lic_action];
            licensed_tx_.push_back(
                {topo_.scbs_positions[k], a.transmit_power_mw, LinkKind::scbs_to_ue, a.subband, 0.0});
            licensed_tx_station_.push_back(static_cast<int>(k) + 1);
        }
    }

    auto rate_for = [&](int u, int station, const Vec2& pos, LinkKind kind, double tx_mw,
                        int subband) {
        const UeState& ue = ues_[static_cast<std::size_t>(u)];
        const double pl =
            pathloss_db(kind, distance(ue.pos, pos), cfg.pathloss_floor_db) + shadow_db(station, u);
        const double rx = tx_mw / db_to_linear(pl);
        double interference = 0.0;
        for (std::size_t i = 0; i < licensed_tx_.size(); ++i) {
            if (licensed_tx_station_[i] == station || licensed_tx_[i].subband != subband)
                continue;
            const double ipl = pathloss_db(licensed_tx_[i].kind,
                                           distance(ue.pos, licensed_tx_[i].position),
                                           cfg.pathloss_floor_db) +
                               shadow_db(licensed_tx_station_[i], u);
            interference += licensed_tx_[i].tx_power_mw / db_to_linear(ipl);
        }
        return licensed_rate_bps(sinr_linear(rx, interference, noise), subband_hz, cfg.sinr_cap_db);
    };

    const SchedulerParams sched_params{cfg.rate_floor, cfg.urgency_floor};
    std::vector<SchedCandidate> candidates;

    auto serve_station_subband = [&](int station, const Vec2& pos, LinkKind kind, double tx_mw,
                                     int subband) -> std::pair<int, std::int64_t> {
        candidates.clear();
        for (std::size_t u = 0; u < ues_.size(); ++u) {
            const UeState& ue = ues_[u];
            if (ue.serving_station != station)
                continue;
            const std::int64_t remaining = pending_bits(ue.flows, Rat::cellular);
            if (remaining <= 0)
                continue;
            SchedCandidate c;
            c.ue = static_cast<int>(u);
            c.remaining_bits = remaining;
            c.inst_rate_bps = rate_for(static_cast<int>(u), station, pos, kind, tx_mw, subband);
            c.avg_rate_bps = ue.avg_rate_bps;
            c.deadline_tti = earliest_deadline(ue.flows, Rat::cellular);
            c.budget_ttis = budget_ttis_for(ue.klass, cfg.traffic);
            candidates.push_back(c);
        }
        const auto pick = schedule(spec_.scheduler, candidates, tti_, sched_params);
        if (!pick)
            return {-1, 0};
        const int u = *pick;
        double rate = 0.0;
        for (const SchedCandidate& c : candidates)
            if (c.ue == u)
                rate = c.inst_rate_bps;
        UeState& ue = ues_[static_cast<std::size_t>(u)];
        const std::int64_t budget = static_cast<std::int64_t>(std::floor(rate * kTtiSeconds));
        const std::int64_t served = serve_flow_bits(ue.flows, budget, Rat::cellular);
        ue.served_bits += served;
        if (tti_ >= cfg.warmup_ttis)
            ue.window_served_bits += served;
        metrics.per_ue_bits[static_cast<std::size_t>(u)] += served;
        return {u, served};
    };

    std::vector<double> served_rate(ues_.size(), 0.0);

    // The MBS spreads its power across the whole band and fills its
    // subbands in order; backlog drained on one subband is gone for the
    // next.
    if (macro_active) {
        const double per_subband_mw = dbm_to_mw(cfg.macro_power) / n_subbands;
        for (int sb = 1; sb <= n_subbands; ++sb) {
            const auto [u, served] =
                serve_station_subband(0, topo_.mbs_position, LinkKind::macro_to_ue, per_subband_mw, sb);
            if (u >= 0) {
                mbs_tti_bits_ += served;
                served_rate[static_cast<std::size_t>(u)] += static_cast<double>(served) / kTtiSeconds;
            }
        }
    }

    if (spec_.policy != PolicyKind::macro_only) {
        for (std::size_t k = 0; k < scbs_.size(); ++k) {
            const Action& a = scbs_[k].licensed.actions[scbs_[k].lic_action];
            const auto [u, served] =
                serve_station_subband(static_cast<int>(k) + 1, topo_.scbs_positions[k],
                                      LinkKind::scbs_to_ue, a.transmit_power_mw, a.subband);
            if (u >= 0) {
                scbs_[k].tti_lic_bits += served;
                scbs_[k].epoch_cell_bits[static_cast<std::size_t>(u)] += served;
                served_rate[static_cast<std::size_t>(u)] += static_cast<double>(served) / kTtiSeconds;
            }
        }
    }

    std::vector<double> avg(ues_.size());
    for (std::size_t u = 0; u < ues_.size(); ++u)
        avg[u] = ues_[u].avg_rate_bps;
    update_avg_rate(avg, served_rate, cfg.ewma_factor);
    for (std::size_t u = 0; u < ues_.size(); ++u)
        ues_[u].avg_rate_bps = avg[u];
}

void World::serve_wifi(TtiMetrics& metrics)
{
    if (!policy_uses_wifi(spec_.policy) || scbs_.empty())
        return;
    const ScenarioConfig& cfg = spec_.config;
    const double capacity = wifi_subband_capacity_bps();

    std::vector<std::int64_t> cell_contenders(scbs_.size(), 0);
    std::vector<std::int64_t> subband_contenders(
        static_cast<std::size_t>(cfg.num_subbands_unlicensed) + 1, 0);
    for (std::size_t k = 0; k < scbs_.size(); ++k) {
        cell_contenders[k] = wifi_cell_contenders(static_cast<int>(k));
        const int sb = scbs_[k].unlicensed.actions[scbs_[k].unlic_action].subband;
        subband_contenders[static_cast<std::size_t>(sb)] += cell_contenders[k];
        scbs_[k].tti_contenders = cell_contenders[k];
    }

    for (std::size_t k = 0; k < scbs_.size(); ++k) {
        if (cell_contenders[k] == 0)
            continue;
        const int sb = scbs_[k].unlicensed.actions[scbs_[k].unlic_action].subband;
        const double share =
            wifi_share_bps(subband_contenders[static_cast<std::size_t>(sb)], capacity,
                           cfg.wifi_efficiency_max, cfg.wifi_efficiency_gamma);
        const std::int64_t per_ue_budget = static_cast<std::int64_t>(std::floor(share * kTtiSeconds));
        for (std::size_t u = 0; u < ues_.size(); ++u) {
            UeState& ue = ues_[u];
            if (ue.serving_station != static_cast<int>(k) + 1 ||
                pending_bits(ue.flows, Rat::wifi) <= 0)
                continue;
            const std::int64_t served = serve_flow_bits(ue.flows, per_ue_budget, Rat::wifi);
            ue.served_bits += served;
            if (tti_ >= cfg.warmup_ttis)
                ue.window_served_bits += served;
            metrics.per_ue_bits[u] += served;
            scbs_[k].tti_wifi_bits[u] += served;
        }
    }
}

std::vector<double> World::cellular_counterfactuals(int scbs, double epoch_secs) const
{
    const ScenarioConfig& cfg = spec_.config;
    const ScbsState& s = scbs_[static_cast<std::size_t>(scbs)];
    const double subband_hz = licensed_subband_hz();
    const double noise = noise_power_mw(cfg.noise_density_dbm_hz, subband_hz);
    const int station = scbs + 1;
    const Vec2& pos = topo_.scbs_positions[static_cast<std::size_t>(scbs)];

    std::vector<double> utilities(s.licensed.actions.size(), 0.0);
    std::vector<double> throughputs;
    for (std::size_t a = 0; a < s.licensed.actions.size(); ++a) {
        const Action& action = s.licensed.actions[a];
        throughputs.clear();
        for (std::size_t u = 0; u < ues_.size(); ++u) {
            const UeState& ue = ues_[u];
            if (ue.serving_station != station)
                continue;
            const std::int64_t demand_bits =
                s.epoch_cell_bits[u] + pending_bits(ue.flows, Rat::cellular);
            if (demand_bits <= 0)
                continue;
            const double pl = pathloss_db(LinkKind::scbs_to_ue, distance(ue.pos, pos),
                                          cfg.pathloss_floor_db) +
                              shadow_db(station, static_cast<int>(u));
            const double rx = action.transmit_power_mw / db_to_linear(pl);
            double interference = 0.0;
            for (std::size_t i = 0; i < licensed_tx_.size(); ++i) {
                if (licensed_tx_station_[i] == station ||
                    licensed_tx_[i].subband != action.subband)
                    continue;
                const double ipl = pathloss_db(licensed_tx_[i].kind,
                                               distance(ue.pos, licensed_tx_[i].position),
                                               cfg.pathloss_floor_db) +
                                   shadow_db(licensed_tx_station_[i], static_cast<int>(u));
                interference += licensed_tx_[i].tx_power_mw / db_to_linear(ipl);
            }
            const double rate =
                licensed_rate_bps(sinr_linear(rx, interference, noise), subband_hz, cfg.sinr_cap_db);
            throughputs.push_back(
                std::min(rate, static_cast<double>(demand_bits) / epoch_secs));
        }
        utilities[a] = scbs_utility(throughputs, utility_cap_bps_);
    }
    return utilities;
}

std::vector<double> World::wifi_counterfactuals(int scbs) const
{
    const ScenarioConfig& cfg = spec_.config;
    const ScbsState& s = scbs_[static_cast<std::size_t>(scbs)];
    const double capacity = wifi_subband_capacity_bps();

    std::vector<std::int64_t> other_on_subband(
        static_cast<std::size_t>(cfg.num_subbands_unlicensed) + 1, 0);
    for (std::size_t k = 0; k < scbs_.size(); ++k) {
        if (static_cast<int>(k) == scbs)
            continue;
        const int sb = scbs_[k].unlicensed.actions[scbs_[k].unlic_action].subband;
        other_on_subband[static_cast<std::size_t>(sb)] += wifi_cell_contenders(static_cast<int>(k));
    }
    const std::int64_t own = wifi_cell_contenders(scbs);

    std::vector<double> utilities(s.unlicensed.actions.size(), 0.0);
    std::vector<double> throughputs;
    for (std::size_t a = 0; a < s.unlicensed.actions.size(); ++a) {
        const int sb = s.unlicensed.actions[a].subband;
        const double share =
            wifi_share_bps(other_on_subband[static_cast<std::size_t>(sb)] + own, capacity,
                           cfg.wifi_efficiency_max, cfg.wifi_efficiency_gamma);
        throughputs.assign(static_cast<std::size_t>(own), share);
        utilities[a] = scbs_utility(throughputs, utility_cap_bps_);
    }
    return utilities;
}

void World::learner_feedback()
{
    if (spec_.policy == PolicyKind::macro_only || scbs_.empty())
        return;
    const ScenarioConfig& cfg = spec_.config;

    if (spec_.learner == LearnerKind::random) {
        // Static strategies: the per-epoch change is identically zero.
        if ((tti_ + 1) % cfg.cellular_period_ttis == 0)
            epoch_deltas_.push_back(0.0);
        return;
    }

    const bool cross = spec_.learner == LearnerKind::cross;
    const std::int64_t epoch_ttis = cross ? cfg.cellular_period_ttis : 1;
    const bool cellular_due = (tti_ + 1) % epoch_ttis == 0;
    const double epoch_secs = static_cast<double>(epoch_ttis) * kTtiSeconds;

    double epoch_delta = 0.0;
    for (std::size_t k = 0; k < scbs_.size(); ++k) {
        ScbsState& s = scbs_[k];
        BandFeedback feedback;

        std::vector<double> wifi_thr;
        if (policy_uses_wifi(spec_.policy)) {
            for (std::size_t u = 0; u < ues_.size(); ++u)
                if (s.tti_wifi_bits[u] > 0)
                    wifi_thr.push_back(static_cast<double>(s.tti_wifi_bits[u]) / kTtiSeconds);
            feedback.wifi_action = static_cast<std::ptrdiff_t>(s.unlic_action);
            feedback.wifi_utility = scbs_utility(wifi_thr, utility_cap_bps_);
        }

        std::vector<double> cell_thr;
        std::vector<double> total_thr;
        if (cellular_due) {
            for (std::size_t u = 0; u < ues_.size(); ++u) {
                if (s.epoch_cell_bits[u] > 0)
                    cell_thr.push_back(static_cast<double>(s.epoch_cell_bits[u]) / epoch_secs);
                const std::int64_t combined = s.epoch_cell_bits[u] + s.tti_wifi_bits[u];
                if (combined > 0)
                    total_thr.push_back(static_cast<double>(combined) / epoch_secs);
            }
            feedback.cellular_action = static_cast<std::ptrdiff_t>(s.lic_action);
            feedback.cellular_utility_exclusive = scbs_utility(cell_thr, utility_cap_bps_);
            feedback.cellular_utility_total = scbs_utility(total_thr, utility_cap_bps_);
        }

        std::vector<double> cell_cf;
        std::vector<double> wifi_cf;
        if (cfg.exact_counterfactual) {
            if (cellular_due) {
                cell_cf = cellular_counterfactuals(static_cast<int>(k), epoch_secs);
                feedback.cellular_counterfactuals = cell_cf;
            }
            if (feedback.wifi_action >= 0) {
                wifi_cf = wifi_counterfactuals(static_cast<int>(k));
                feedback.wifi_counterfactuals = wifi_cf;
            }
        }

        const std::vector<double> prev_lic = s.licensed.strategy;
        const std::vector<double> prev_unlic = s.unlicensed.strategy;
        bool updated = false;
        if (cross)
            updated = cross_system_step(s.licensed, s.unlicensed, s.clock, feedback);
        else
            updated = independent_rl_step(s.licensed, s.unlicensed, s.clock, feedback);

        s.lic_strategy_change = updated ? l1_distance(prev_lic, s.licensed.strategy) : 0.0;
        s.unlic_strategy_change =
            feedback.wifi_action >= 0 ? l1_distance(prev_unlic, s.unlicensed.strategy) : 0.0;
        if (updated) {
            epoch_delta = std::max(epoch_delta, s.lic_strategy_change);
            std::fill(s.epoch_cell_bits.begin(), s.epoch_cell_bits.end(), 0);
        }
    }
    if (cellular_due)
        epoch_deltas_.push_back(epoch_delta);
}

TtiMetrics World::run_tti()
{
    const ScenarioConfig& cfg = spec_.config;
    TtiMetrics metrics;
    metrics.tti = tti_;
    metrics.per_ue_bits.assign(ues_.size(), 0);
    metrics.dropped_packets.assign(ues_.size(), 0);

    mbs_tti_bits_ = 0;
    for (ScbsState& s : scbs_) {
        s.tti_lic_bits = 0;
        s.tti_contenders = 0;
        std::fill(s.tti_wifi_bits.begin(), s.tti_wifi_bits.end(), 0);
    }

    // 1. Deadline expiry, then traffic arrivals.
    std::vector<std::size_t> ue_order(ues_.size());
    std::iota(ue_order.begin(), ue_order.end(), std::size_t{0});
    for (std::size_t u : ue_order) {
        UeState& ue = ues_[u];
        const DropResult drops = drop_expired_flows(ue.flows, tti_);
        ue.dropped_packets += drops.packets;
        ue.dropped_bits += drops.bits;
        metrics.dropped_packets[u] = drops.packets;
        const bool queue_empty = pending_bits(ue.flows) == 0;
        for (FlowState& flow : ue.arrivals.poll(tti_, queue_empty)) {
            ue.arrived_bits += flow.total_bits;
            ue.flows.push_back(flow);
        }
    }

    // 2. Association refresh and per-flow RAT steering.
    if (tti_ % cfg.reassociation_period_ttis == 0)
        reassociate();
    else
        steer_new_flows(ue_order);
    for (UeState& ue : ues_)
        if (ue.serving_station == 0)
            ++ue.mbs_attach_ttis;

    // 3. Learner action sampling on each band's clock.
    sample_actions();

    // 4./5. Scheduling, link evaluation and service.
    serve_licensed(metrics);
    serve_wifi(metrics);

    // 6. Learner feedback and strategy updates.
    learner_feedback();

    // 7. Metrics snapshot.
    metrics.rows.push_back({0, Band::licensed, mbs_tti_bits_, 0.0, 0.0, 0});
    if (spec_.policy != PolicyKind::macro_only) {
        for (std::size_t k = 0; k < scbs_.size(); ++k) {
            const ScbsState& s = scbs_[k];
            metrics.rows.push_back({static_cast<int>(k) + 1, Band::licensed, s.tti_lic_bits,
                                    positive_regret_l1(s.licensed.regrets), s.lic_strategy_change,
                                    0});
            if (policy_uses_wifi(spec_.policy)) {
                std::int64_t wifi_bits = 0;
                for (std::int64_t b : s.tti_wifi_bits)
                    wifi_bits += b;
                metrics.rows.push_back({static_cast<int>(k) + 1, Band::unlicensed, wifi_bits,
                                        positive_regret_l1(s.unlicensed.regrets),
                                        s.unlic_strategy_change, s.tti_contenders});
            }
        }
    }

    // Band-dominance oscillation tracking.
    for (ScbsState& s : scbs_) {
        std::int64_t wifi_bits = 0;
        for (std::int64_t b : s.tti_wifi_bits)
            wifi_bits += b;
        s.lic_ema = (1.0 - cfg.oscillation_alpha) * s.lic_ema +
                    cfg.oscillation_alpha * static_cast<double>(s.tti_lic_bits);
        s.wifi_ema = (1.0 - cfg.oscillation_alpha) * s.wifi_ema +
                     cfg.oscillation_alpha * static_cast<double>(wifi_bits);
        const int sign = s.lic_ema >= s.wifi_ema ? 1 : -1;
        if (s.osc_sign != 0 && sign != s.osc_sign && tti_ >= cfg.warmup_ttis)
            ++s.oscillations;
        s.osc_sign = sign;
    }

    // Mobility step: constant speed, fixed heading.
    const double step_m = cfg.speed / 3.6 * kTtiSeconds;
    for (UeState& ue : ues_) {
        ue.pos.x += step_m * std::cos(ue.heading_rad);
        ue.pos.y += step_m * std::sin(ue.heading_rad);
    }

    ++tti_;
    stream_.push_back(metrics);
    return metrics;
}

void World::run_all()
{
    for (std::int64_t t = tti_; t < spec_.config.tti_count; ++t)
        run_tti();
}

RunSummary World::summary() const
{
    const ScenarioConfig& cfg = spec_.config;
    RunSummary s;
    s.ue_class.reserve(ues_.size());
    for (const UeState& ue : ues_)
        s.ue_class.push_back(ue.klass);

    const std::int64_t measured_ttis = std::max<std::int64_t>(0, tti_ - cfg.warmup_ttis);
    const double duration = static_cast<double>(measured_ttis) * kTtiSeconds;

    s.ue_throughput_bps.assign(ues_.size(), 0.0);
    s.ue_dropped_packets.assign(ues_.size(), 0);
    s.ue_mostly_macro.assign(ues_.size(), false);
    for (std::size_t u = 0; u < ues_.size(); ++u) {
        const UeState& ue = ues_[u];
        // Published values carry 9 significant digits; the summary is
        // defined over exactly those values.
        s.ue_throughput_bps[u] =
            duration > 0.0 ? round_g9(static_cast<double>(ue.window_served_bits) / duration) : 0.0;
        s.ue_dropped_packets[u] = ue.dropped_packets;
        s.ue_mostly_macro[u] = 2 * ue.mbs_attach_ttis > tti_;
        s.total_arrived_bits += ue.arrived_bits;
        s.total_served_bits += ue.served_bits;
        s.total_dropped_bits += ue.dropped_bits;
        s.total_remaining_bits += pending_bits(ue.flows);
    }

    if (!ues_.empty()) {
        s.ue_throughput_cdf = compute_cdf(s.ue_throughput_bps);
        s.cell_edge_throughput = round_g9(percentile(s.ue_throughput_cdf, 5.0));
        s.median_throughput = round_g9(percentile(s.ue_throughput_cdf, 50.0));
    }

    std::int64_t window_bits = 0;
    for (const UeState& ue : ues_)
        window_bits += ue.window_served_bits;
    s.cell_throughput = duration > 0.0 ? round_g9(static_cast<double>(window_bits) / duration) : 0.0;

    const std::int64_t window = cfg.convergence_window;
    if (static_cast<std::int64_t>(epoch_deltas_.size()) >= window && !scbs_.empty()) {
        std::int64_t run = 0;
        for (std::size_t e = 0; e < epoch_deltas_.size(); ++e) {
            run = epoch_deltas_[e] < cfg.convergence_threshold ? run + 1 : 0;
            if (run >= window) {
                s.convergence_epoch = static_cast<std::int64_t>(e) - window + 2; // 1-based
                break;
            }
        }
    }

    s.oscillation_count.reserve(scbs_.size());
    for (const ScbsState& sc : scbs_)
        s.oscillation_count.push_back(sc.oscillations);

    s.intolerant_wifi_assignments = intolerant_wifi_assignments_;
    return s;
}

RunSummary run_simulation(const RunSpec& spec, std::vector<TtiMetrics>* stream_out)
{
    World world(spec);
    world.run_all();
    if (stream_out)
        *stream_out = world.stream();
    return world.summary();
}

std::vector<std::string> preset_names()
{
    return {"fig3", "fig4", "fig5", "fig6"};
}

namespace {

RunSpec make_run(ScenarioConfig cfg, PolicyKind policy, SchedulerKind sched, LearnerKind learner,
                 std::string name)
{
    RunSpec spec;
    spec.config = std::move(cfg);
    spec.policy = policy;
    spec.scheduler = sched;
    spec.learner = learner;
    spec.name = std::move(name);
    return spec;
}

} // namespace

std::vector<RunSpec> preset(const std::string& name, std::int64_t base_seed)
{
    std::vector<RunSpec> runs;
    if (name == "fig3") {
        // Convergence comparison: small action space, long horizon so the
        // uncoordinated baseline has room to settle.
        ScenarioConfig cfg;
        cfg.seed = base_seed;
        cfg.num_small_cells = 2;
        cfg.num_ues_per_sector = 10;
        cfg.bandwidth_licensed = 1.4e6;
        cfg.num_subbands_licensed = 2;
        cfg.tti_count = 2000;
        runs.push_back(make_run(cfg, PolicyKind::proposed, SchedulerKind::ps, LearnerKind::cross,
                                "fig3_cross"));
        runs.push_back(make_run(cfg, PolicyKind::proposed, SchedulerKind::ps,
                                LearnerKind::independent, "fig3_independent"));
    } else if (name == "fig4") {
        // Offload comparison at 30 UEs per sector.
        ScenarioConfig cfg;
        cfg.seed = base_seed;
        cfg.num_small_cells = 2;
        cfg.num_ues_per_sector = 30;
        runs.push_back(make_run(cfg, PolicyKind::macro_only, SchedulerKind::pf, LearnerKind::random,
                                "fig4_macro-only"));
        const std::pair<PolicyKind, const char*> policies[] = {
            {PolicyKind::hetnet, "hetnet"},
            {PolicyKind::hetnet_wifi_load, "hetnet-wifi-load"},
            {PolicyKind::hetnet_wifi_coverage, "hetnet-wifi-coverage"},
        };
        for (const auto& [policy, pname] : policies) {
            runs.push_back(make_run(cfg, policy, SchedulerKind::pf, LearnerKind::random,
                                    std::string("fig4_") + pname + "_random"));
            runs.push_back(make_run(cfg, policy, SchedulerKind::ps, LearnerKind::cross,
                                    std::string("fig4_") + pname + "_learned"));
        }
    } else if (name == "fig5") {
        // Scheduler scaling across offered load. The proactive scheduler
        // rides the full proposed system; PF/EDF ride the load-based
        // benchmark with static random subbands.
        for (std::int64_t n : {30, 60, 90, 120}) {
            ScenarioConfig cfg;
            cfg.seed = base_seed;
            cfg.num_small_cells = 2;
            cfg.num_ues_per_sector = n;
            cfg.num_subbands_licensed = 2;
            const std::string suffix = "_n" + std::to_string(n);
            runs.push_back(make_run(cfg, PolicyKind::proposed, SchedulerKind::ps, LearnerKind::cross,
                                    "fig5_ps" + suffix));
            runs.push_back(make_run(cfg, PolicyKind::hetnet_wifi_load, SchedulerKind::pf,
                                    LearnerKind::random, "fig5_pf" + suffix));
            runs.push_back(make_run(cfg, PolicyKind::hetnet_wifi_load, SchedulerKind::edf,
                                    LearnerKind::random, "fig5_edf" + suffix));
        }
    } else if (name == "fig6") {
        // Densification sweep at high load.
        for (std::int64_t k : {2, 4, 6}) {
            ScenarioConfig cfg;
            cfg.seed = base_seed;
            cfg.num_small_cells = k;
            cfg.num_ues_per_sector = 90;
            cfg.num_subbands_licensed = 2;
            const std::string suffix = "_k" + std::to_string(k);
            runs.push_back(make_run(cfg, PolicyKind::macro_only, SchedulerKind::pf,
                                    LearnerKind::random, "fig6_macro-only" + suffix));
            runs.push_back(make_run(cfg, PolicyKind::hetnet, SchedulerKind::ps, LearnerKind::cross,
                                    "fig6_hetnet" + suffix));
            runs.push_back(make_run(cfg, PolicyKind::proposed, SchedulerKind::ps, LearnerKind::cross,
                                    "fig6_hetnet-wifi" + suffix));
        }
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return runs;
}

void write_run_outputs(const std::string& out_dir, const RunSpec& spec,
                       const std::vector<TtiMetrics>& stream, const RunSummary& summary)
{
    namespace fs = std::filesystem;
    const fs::path dir = fs::path(out_dir) / spec.name;
    fs::create_directories(dir);

    {
        std::ofstream out(dir / "tti_metrics.csv");
        out << "tti,station,band,bits,regret_l1,strategy_l1_change,wifi_contenders\n";
        for (const TtiMetrics& m : stream) {
            for (const StationBandMetrics& row : m.rows) {
                out << m.tti << ',' << row.station << ',' << band_name(row.band) << ',' << row.bits
                    << ',' << format_g9(row.regret_l1) << ',' << format_g9(row.strategy_l1_change)
                    << ',' << row.wifi_contenders << '\n';
            }
        }
    }
    {
        std::ofstream out(dir / "ue_summary.csv");
        out << "ue,class,avg_throughput_bps,dropped\n";
        for (std::size_t u = 0; u < summary.ue_throughput_bps.size(); ++u) {
            out << u << ',' << traffic_class(summary.ue_class[u]).name << ','
                << format_g9(summary.ue_throughput_bps[u]) << ',' << summary.ue_dropped_packets[u]
                << '\n';
        }
    }
    {
        std::ofstream out(dir / "run_summary.csv");
        out << "cell_throughput,cell_edge,median,convergence_epoch,oscillations\n";
        std::int64_t oscillations = 0;
        for (std::int64_t o : summary.oscillation_count)
            oscillations += o;
        out << format_g9(summary.cell_throughput) << ',' << format_g9(summary.cell_edge_throughput)
            << ',' << format_g9(summary.median_throughput) << ',' << summary.convergence_epoch
            << ',' << oscillations << '\n';
    }
}

void run_preset(const std::vector<RunSpec>& specs, const std::string& out_dir, int jobs)
{
    if (jobs <= 1) {
        for (const RunSpec& spec : specs) {
            std::vector<TtiMetrics> stream;
            const RunSummary summary = run_simulation(spec, &stream);
            write_run_outputs(out_dir, spec, stream, summary);
        }
        return;
    }

    std::vector<std::future<void>> pending;
    for (const RunSpec& spec : specs) {
        if (static_cast<int>(pending.size()) >= jobs) {
            pending.front().get();
            pending.erase(pending.begin());
        }
        pending.push_back(std::async(std::launch::async, [spec, out_dir]() {
            std::vector<TtiMetrics> stream;
            const RunSummary summary = run_simulation(spec, &stream);
            write_run_outputs(out_dir, spec, stream, summary);
        }));
    }
    for (auto& f : pending)
        f.get();
}

} // namespace hetsim
