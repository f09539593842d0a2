#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "hetsim/traffic.hpp"

namespace hetsim {

enum class PolicyKind { macro_only, hetnet, hetnet_wifi_load, hetnet_wifi_coverage, proposed };

const char* policy_name(PolicyKind p);
PolicyKind policy_from_name(const std::string& name);

// True when the policy steers delay-tolerant flows to WiFi.
bool policy_uses_wifi(PolicyKind p);

// True when SCBS actions come from the regret learner rather than a static
// random draw.
bool policy_uses_learning(PolicyKind p);

struct StationRsrp {
    int station = 0;      // 0 = MBS, >= 1 SCBS
    double rsrp_dbm = 0.0;
    double bias_db = 0.0; // 0 for the MBS
};

// Biased RSRP association: argmax of rsrp + bias, ties to the lowest
// station index. Throws on an empty station list.
int associate_cellular(std::span<const StationRsrp> stations);

// Load-based WiFi admission: delay-tolerant flows join while the cell holds
// fewer contenders than the threshold; everything else stays cellular.
bool admit_wifi_load_based(bool delay_tolerant, std::int64_t cell_contenders,
                           std::int64_t threshold);

// Coverage-based WiFi admission: delay-tolerant flows join whenever the
// unlicensed RSRP clears the threshold, regardless of load.
bool admit_wifi_coverage_based(bool delay_tolerant, double unlicensed_rsrp_dbm,
                               double rsrp_threshold_dbm);

} // namespace hetsim
