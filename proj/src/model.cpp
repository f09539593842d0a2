#include "hetsim/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hetsim/rng.hpp"
#include "hetsim/util.hpp"

namespace hetsim {

namespace {
constexpr int kPlacementAttempts = 10000;
}

const char* band_name(Band b)
{
    return b == Band::licensed ? "licensed" : "unlicensed";
}

double power_of_level(int level, int num_levels, double p_max_mw)
{
    if (num_levels < 1)
        throw std::invalid_argument("power_of_level: num_levels must be >= 1");
    if (level < 1 || level > num_levels)
        throw std::out_of_range("power_of_level: level " + std::to_string(level) + " outside 1.." +
                                std::to_string(num_levels));
    return static_cast<double>(level) * p_max_mw / static_cast<double>(num_levels);
}

ActionSet enumerate_actions(const ScenarioConfig& config, Band band)
{
    config.validate();
    const int levels = static_cast<int>(config.power_levels);
    const int subbands = static_cast<int>(band == Band::licensed ? config.num_subbands_licensed
                                                                 : config.num_subbands_unlicensed);
    const int biases = band == Band::licensed ? static_cast<int>(config.bias_levels) : 1;
    const double p_max_mw =
        dbm_to_mw(band == Band::licensed ? config.max_power : config.unlicensed_power);

    ActionSet actions;
    actions.reserve(static_cast<std::size_t>(levels) * subbands * biases);
    for (int l = 1; l <= levels; ++l) {
        for (int s = 1; s <= subbands; ++s) {
            for (int b = 1; b <= biases; ++b) {
                Action a;
                a.power_level = l;
                a.subband = s;
                a.bias_index = b;
                a.transmit_power_mw = power_of_level(l, levels, p_max_mw);
                a.bias_db = band == Band::licensed ? config.bias_values[b - 1] : 0.0;
                actions.push_back(a);
            }
        }
    }
    return actions;
}

std::int64_t hotspot_ues_per_scbs(std::int64_t n_ue_per_sector, std::int64_t k_per_sector)
{
    if (k_per_sector < 1)
        return 0;
    return (2 * n_ue_per_sector) / (3 * k_per_sector);
}

namespace {

// Uniform point in the 120-degree wedge of given radius around the origin.
Vec2 sample_in_sector(RngStream& rng, const Sector& sector, double radius)
{
    const double r = radius * std::sqrt(rng.u01());
    const double theta = deg_to_rad(sector.bearing_deg + (rng.u01() - 0.5) * 120.0);
    return {sector.center.x + r * std::cos(theta), sector.center.y + r * std::sin(theta)};
}

Vec2 sample_in_disk(RngStream& rng, const Vec2& center, double radius)
{
    const double r = radius * std::sqrt(rng.u01());
    const double theta = 2.0 * M_PI * rng.u01();
    return {center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
}

} // namespace

Topology build_scenario(const ScenarioConfig& config)
{
    config.validate();

    Topology topo;
    topo.mbs_position = {0.0, 0.0};
    topo.macro_sectors = {Sector{topo.mbs_position, 0.0}, Sector{topo.mbs_position, 120.0},
                          Sector{topo.mbs_position, 240.0}};

    RngStream rng(static_cast<std::uint64_t>(config.seed), "topology");

    const std::int64_t k = config.num_small_cells;
    const std::int64_t n_ue = config.num_ues_per_sector;
    const std::int64_t n_hotspot = hotspot_ues_per_scbs(n_ue, k);

    for (int sector_idx = 0; sector_idx < 3; ++sector_idx) {
        const Sector& sector = topo.macro_sectors[sector_idx];
        for (std::int64_t j = 0; j < k; ++j) {
            Vec2 pos;
            bool placed = false;
            for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
                pos = sample_in_sector(rng, sector, config.sector_radius);
                if (distance(pos, topo.mbs_position) >= config.min_mbs_scbs_distance) {
                    placed = true;
                    break;
                }
            }
            if (!placed)
                throw std::runtime_error(
                    "build_scenario: cannot place SCBS " + std::to_string(j) + " in sector " +
                    std::to_string(sector_idx) + " after " + std::to_string(kPlacementAttempts) +
                    " attempts (sector_radius vs min_mbs_scbs_distance)");
            topo.scbs_positions.push_back(pos);
            topo.scbs_sector.push_back(sector_idx);
        }
    }

    for (int sector_idx = 0; sector_idx < 3; ++sector_idx) {
        const Sector& sector = topo.macro_sectors[sector_idx];
        std::int64_t dropped = 0;
        if (k >= 1) {
            for (std::int64_t j = 0; j < k; ++j) {
                const int scbs_index = sector_idx * static_cast<int>(k) + static_cast<int>(j);
                for (std::int64_t u = 0; u < n_hotspot; ++u) {
                    topo.ue_positions.push_back(
                        sample_in_disk(rng, topo.scbs_positions[scbs_index], config.hotspot_radius));
                    topo.ue_sector.push_back(sector_idx);
                    topo.ue_home.push_back(scbs_index);
                    ++dropped;
                }
            }
        }
        for (; dropped < n_ue; ++dropped) {
            topo.ue_positions.push_back(sample_in_sector(rng, sector, config.sector_radius));
            topo.ue_sector.push_back(sector_idx);
            topo.ue_home.push_back(-1);
        }
    }

    for (std::size_t u = 0; u < topo.ue_positions.size(); ++u)
        topo.ue_heading_rad.push_back(2.0 * M_PI * rng.u01());

    return topo;
}

} // namespace hetsim
