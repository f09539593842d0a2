#pragma once

#include <cstdint>
#include <span>

#include "hetsim/geometry.hpp"

namespace hetsim {

enum class LinkKind { macro_to_ue, scbs_to_ue };

struct RadioParams {
    double noise_density_dbm_hz = -174.0;
    double sinr_cap_db = 30.0;
    double pathloss_floor_db = 38.0;
};

// Link evaluation result for one UE-station pair on one subband.
struct LinkBudget {
    double pathloss_db = 0.0;
    double rx_power_dbm = 0.0;
    double interference_mw = 0.0;
    double noise_mw = 0.0;
    double sinr = 0.0;     // linear
    double rate_bps = 0.0;
};

// Contention state of one WiFi cell on its subband.
struct WifiCell {
    std::int64_t contenders = 0;
    double per_station_share_bps = 0.0;
    double efficiency = 1.0;
};

// 3GPP outdoor picocell recipes: macro 128.1 + 37.6 log10(d_km), small cell
// 140.7 + 36.7 log10(d_km), clamped below. Throws on non-positive distance.
double pathloss_db(LinkKind kind, double distance_m, double floor_db = 38.0);

double sinr_linear(double rx_mw, double interference_mw, double noise_mw);

// Shannon rate with a cap on the SINR to keep the log term bounded.
double licensed_rate_bps(double sinr, double bandwidth_hz, double sinr_cap_db = 30.0);

// Per-station WiFi share under n contenders: efficiency(n) * capacity / n
// with efficiency(n) = e_max / (1 + gamma * (n - 1)). Zero when idle.
double wifi_share_bps(std::int64_t contenders, double capacity_bps, double e_max = 0.8,
                      double gamma = 0.05);

WifiCell wifi_cell_state(std::int64_t contenders, double capacity_bps, double e_max = 0.8,
                         double gamma = 0.05);

// Reference signal received power: reference power minus pathloss, no
// interference term.
double rsrp_dbm(double ref_power_dbm, double pathloss_db);

double noise_power_mw(double noise_density_dbm_hz, double bandwidth_hz);

// One co-channel transmitter as seen by the link evaluator.
struct StationTx {
    Vec2 position;
    double tx_power_mw = 0.0;
    LinkKind kind = LinkKind::scbs_to_ue;
    int subband = 0;
    double shadow_db = 0.0; // pathloss offset toward the UE being evaluated
};

// Full link budget for a UE served on `subband`: interferers on other
// subbands contribute zero.
LinkBudget evaluate_link(const Vec2& ue, const StationTx& server, std::span<const StationTx> others,
                         int subband, double subband_hz, const RadioParams& params);

} // namespace hetsim
