#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hetsim/config.hpp"
#include "hetsim/geometry.hpp"

namespace hetsim {

enum class Band { licensed, unlicensed };

const char* band_name(Band b);

// One transmit configuration of an SCBS: the pure strategy of the game.
struct Action {
    int power_level = 1; // 1..L
    int subband = 1;     // 1..S
    int bias_index = 1;  // 1..B (inert on the unlicensed band)
    double transmit_power_mw = 0.0;
    double bias_db = 0.0;
};

using ActionSet = std::vector<Action>;

// Uniform linear power grid: level l of L maps to l * p_max / L.
double power_of_level(int level, int num_levels, double p_max_mw);

// Licensed band: L x S_lic x B actions. Unlicensed band: the bias index is
// inert (WiFi admission is load- or coverage-based, not bias-based), so the
// set collapses to L x S_unlic.
ActionSet enumerate_actions(const ScenarioConfig& config, Band band);

struct Sector {
    Vec2 center;        // the MBS site
    double bearing_deg; // boresight of the 120-degree wedge
};

struct Topology {
    Vec2 mbs_position;
    std::array<Sector, 3> macro_sectors;
    std::vector<Vec2> scbs_positions; // 3 * K
    std::vector<int> scbs_sector;
    std::vector<Vec2> ue_positions; // 3 * N_UE
    std::vector<int> ue_sector;
    std::vector<int> ue_home; // home SCBS index for hotspot UEs, -1 otherwise
    std::vector<double> ue_heading_rad;
};

// Deterministic function of (config, seed). Throws std::runtime_error when
// rejection sampling cannot satisfy the placement constraints within 10,000
// attempts per element.
Topology build_scenario(const ScenarioConfig& config);

// Hotspot UEs dropped around each SCBS: floor((2/3) * N_UE / K).
std::int64_t hotspot_ues_per_scbs(std::int64_t n_ue_per_sector, std::int64_t k_per_sector);

} // namespace hetsim
