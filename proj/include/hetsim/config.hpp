#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hetsim {

// Per-class source model parameters. Overridable from the scenario file
// with traffic.<class>.<param> keys.
struct TrafficParams {
    // FTP: back-to-back file transfers, a new file only once the previous
    // one has drained.
    std::int64_t ftp_file_bits = 16'000'000; // 2 MB

    // HTTP: truncated log-normal page sizes with an exponential reading
    // time between pages.
    double http_page_mean_bits = 800e3; // 100 KB
    double http_page_sigma = 1.0;
    double http_page_max_bits = 4e6;
    double http_reading_mean_ms = 5000.0;

    // Video: constant-rate stream delivered in fixed chunks.
    double video_rate_bps = 512e3;
    std::int64_t video_chunk_ms = 40;
    std::int64_t video_budget_ms = 100;

    // VoIP: strictly periodic small packets.
    std::int64_t voip_period_ms = 20;
    std::int64_t voip_packet_bits = 1280; // 160 bytes
    std::int64_t voip_budget_ms = 50;

    // Gaming: periodic packets with log-normal jitter.
    std::int64_t gaming_period_ms = 40;
    std::int64_t gaming_packet_bits = 1600; // 200 bytes
    std::int64_t gaming_budget_ms = 60;
    double gaming_jitter_sigma = 0.5; // log-normal sigma, ms scale
};

struct ScenarioConfig {
    // Topology scale. num_small_cells and num_ues_per_sector are per macro
    // sector; the macrocell has three sectors.
    std::int64_t num_small_cells = 2;
    std::int64_t num_ues_per_sector = 30;
    std::int64_t num_subbands_licensed = 4;
    std::int64_t num_subbands_unlicensed = 4;
    std::int64_t power_levels = 3;
    std::int64_t bias_levels = 4;
    std::vector<double> bias_values = {0.0, 3.0, 6.0, 9.0}; // dB
    double max_power = 30.0;        // dBm, SCBS licensed band
    double macro_power = 46.0;      // dBm
    double unlicensed_power = 23.0; // dBm, SCBS unlicensed band
    double bandwidth_licensed = 5e6;    // Hz
    double bandwidth_unlicensed = 20e6; // Hz
    std::int64_t tti_count = 500;
    std::int64_t seed = 1;
    double speed = 3.0; // km/h

    // Geometry
    double sector_radius = 289.0;        // m
    double min_mbs_scbs_distance = 75.0; // m
    double hotspot_radius = 40.0;        // m

    // Radio
    bool shadowing = false;
    double shadowing_sigma_db = 8.0;
    double noise_density_dbm_hz = -174.0;
    double sinr_cap_db = 30.0;
    double pathloss_floor_db = 38.0;
    double wifi_efficiency_max = 0.8;
    double wifi_efficiency_gamma = 0.05;
    double wifi_spectral_efficiency = 4.0; // bits/s/Hz

    // Association and steering
    std::int64_t load_threshold = 8;
    double rsrp_threshold = -72.0; // dBm
    std::int64_t reassociation_period_ttis = 50;
    double wifi_coverage_radius = 40.0; // m

    // Scheduling
    double ewma_factor = 0.05;
    double rate_floor = 1e3;     // bits/s
    double urgency_floor = 0.02;

    // Learning
    double kappa0 = 5.0;
    double kappa_tau = 100.0;
    bool kappa_constant = false;
    std::int64_t cellular_period_ttis = 10;
    bool exact_counterfactual = false;
    double wifi_summary_alpha = 0.1;
    double utility_min = 0.0;
    double utility_max = 1.0;

    // Engine
    std::int64_t warmup_ttis = 50;
    double convergence_threshold = 0.01;
    std::int64_t convergence_window = 20; // learner epochs
    double oscillation_alpha = 0.1;

    TrafficParams traffic;

    // Throws std::invalid_argument when any invariant is violated.
    void validate() const;
};

// Parses a flat key=value scenario file ('#' starts a comment). Every
// ScenarioConfig field has a key of the same name; unknown keys are an
// error. The parsed config is validated before being returned.
ScenarioConfig parse_config_file(const std::string& path);
ScenarioConfig parse_config_text(const std::string& text);

} // namespace hetsim
