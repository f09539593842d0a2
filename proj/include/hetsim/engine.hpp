#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hetsim/association.hpp"
#include "hetsim/config.hpp"
#include "hetsim/learning.hpp"
#include "hetsim/model.hpp"
#include "hetsim/radio.hpp"
#include "hetsim/scheduling.hpp"
#include "hetsim/traffic.hpp"

namespace hetsim {

struct RunSpec {
    ScenarioConfig config;
    PolicyKind policy = PolicyKind::proposed;
    SchedulerKind scheduler = SchedulerKind::ps;
    LearnerKind learner = LearnerKind::cross;
    std::string name = "run";
};

struct StationBandMetrics {
    int station = 0; // 0 = MBS
    Band band = Band::licensed;
    std::int64_t bits = 0;
    double regret_l1 = 0.0;
    double strategy_l1_change = 0.0;
    std::int64_t wifi_contenders = 0;
};

// Per-TTI record: the raw material of every figure.
struct TtiMetrics {
    std::int64_t tti = 0;
    std::vector<StationBandMetrics> rows;
    std::vector<std::int64_t> per_ue_bits;     // both RATs
    std::vector<std::int64_t> dropped_packets; // per UE this TTI
};

struct RunSummary {
    std::vector<double> ue_throughput_cdf; // sorted ascending
    double cell_throughput = 0.0;          // bits/s, network total
    double cell_edge_throughput = 0.0;     // 5th percentile UE throughput
    double median_throughput = 0.0;
    std::int64_t convergence_epoch = -1; // -1: none
    std::vector<std::int64_t> oscillation_count; // per SCBS

    // Additional per-run data used by tests and reports (not in the CSV row).
    std::vector<double> ue_throughput_bps;
    std::vector<TrafficType> ue_class;
    std::vector<std::int64_t> ue_dropped_packets;
    std::vector<bool> ue_mostly_macro; // attached to the MBS most of the run
    std::int64_t intolerant_wifi_assignments = 0;
    std::int64_t total_arrived_bits = 0;
    std::int64_t total_served_bits = 0;
    std::int64_t total_dropped_bits = 0;
    std::int64_t total_remaining_bits = 0;
};

// Linear-interpolation percentile on a sorted sample; percentile(0) is the
// minimum and percentile(100) the maximum. Throws on an empty sample.
double percentile(std::span<const double> sorted_ascending, double p);

// Sorted copy of the per-UE averages.
std::vector<double> compute_cdf(std::span<const double> values);

// The simulation world: one station set, one UE population, one policy.
class World {
public:
    explicit World(RunSpec spec);
    // Test hook: explicit topology and traffic classes.
    World(RunSpec spec, Topology topology, std::vector<TrafficType> classes);

    TtiMetrics run_tti();
    void run_all();

    RunSummary summary() const;
    const std::vector<TtiMetrics>& stream() const { return stream_; }

    // Introspection used by the test suites.
    int serving_station(int ue) const { return ues_[static_cast<std::size_t>(ue)].serving_station; }
    const std::vector<FlowState>& ue_flows(int ue) const
    {
        return ues_[static_cast<std::size_t>(ue)].flows;
    }
    std::size_t num_ues() const { return ues_.size(); }
    std::size_t num_scbs() const { return scbs_.size(); }
    const std::vector<double>& cellular_strategy(int scbs) const;
    std::span<const double> epoch_strategy_deltas() const { return epoch_deltas_; }
    std::int64_t intolerant_wifi_assignments() const { return intolerant_wifi_assignments_; }

private:
    struct UeState {
        Vec2 pos;
        double heading_rad = 0.0;
        TrafficType klass = TrafficType::ftp;
        ArrivalProcess arrivals;
        std::vector<FlowState> flows;
        double avg_rate_bps = 0.0;
        int serving_station = 0;
        std::int64_t arrived_bits = 0;
        std::int64_t served_bits = 0;
        std::int64_t dropped_bits = 0;
        std::int64_t dropped_packets = 0;
        std::int64_t window_served_bits = 0;
        std::int64_t mbs_attach_ttis = 0;

        UeState(TrafficType t, const TrafficParams& p, RngStream stream)
            : klass(t), arrivals(t, p, stream)
        {
        }
    };

    struct ScbsState {
        LearnerState licensed;
        LearnerState unlicensed;
        std::size_t lic_action = 0;
        std::size_t unlic_action = 0;
        RngStream lic_rng;
        RngStream unlic_rng;
        CrossSystemClock clock;
        std::vector<std::int64_t> epoch_cell_bits; // per UE, licensed epoch
        std::vector<std::int64_t> tti_wifi_bits;   // per UE, this TTI
        std::int64_t tti_lic_bits = 0;
        std::int64_t tti_contenders = 0;
        double lic_strategy_change = 0.0;
        double unlic_strategy_change = 0.0;
        double lic_ema = 0.0;
        double wifi_ema = 0.0;
        int osc_sign = 0;
        std::int64_t oscillations = 0;
    };

    void init(std::vector<TrafficType> classes);
    void reassociate();
    void steer_new_flows(std::span<const std::size_t> ue_order);
    bool wifi_available_for(const UeState& ue) const;
    std::int64_t wifi_cell_contenders(int scbs) const;
    double station_rsrp(int ue, int station) const;
    double unlicensed_rsrp(int ue, int scbs) const;
    bool steer_flow(std::size_t ue_index, FlowState& flow);
    void sample_actions();
    void serve_licensed(TtiMetrics& metrics);
    void serve_wifi(TtiMetrics& metrics);
    void learner_feedback();
    std::vector<double> cellular_counterfactuals(int scbs, double epoch_secs) const;
    std::vector<double> wifi_counterfactuals(int scbs) const;
    double shadow_db(int station, int ue) const;
    int station_of_scbs(int scbs) const { return scbs + 1; }
    double licensed_subband_hz() const;
    double wifi_subband_capacity_bps() const;

    RunSpec spec_;
    Topology topo_;
    std::vector<UeState> ues_;
    std::vector<ScbsState> scbs_;
    std::vector<double> shadow_; // (1 + n_scbs) x n_ue, row-major; empty if off
    std::int64_t tti_ = 0;
    std::int64_t mbs_tti_bits_ = 0;
    std::vector<TtiMetrics> stream_;
    std::vector<double> epoch_deltas_; // max cellular strategy change per epoch
    std::int64_t intolerant_wifi_assignments_ = 0;
    double utility_cap_bps_ = 1.0;
    RadioParams radio_;

    // Scratch rebuilt each TTI
    std::vector<StationTx> licensed_tx_;
    std::vector<int> licensed_tx_station_; // station id per entry
};

RunSummary run_simulation(const RunSpec& spec, std::vector<TtiMetrics>* stream_out = nullptr);

std::vector<std::string> preset_names();

// Scenario presets; each returns the full list of runs it comprises.
std::vector<RunSpec> preset(const std::string& name, std::int64_t base_seed);

// Writes tti_metrics.csv, ue_summary.csv and run_summary.csv under
// dir/<spec.name>/.
void write_run_outputs(const std::string& out_dir, const RunSpec& spec,
                       const std::vector<TtiMetrics>& stream, const RunSummary& summary);

// Executes runs (concurrently when jobs > 1) and writes per-run outputs.
// Serial and concurrent execution produce identical files.
void run_preset(const std::vector<RunSpec>& specs, const std::string& out_dir, int jobs);

} // namespace hetsim
