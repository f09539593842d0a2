#include "hetsim/radio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hetsim/util.hpp"

namespace hetsim {

double pathloss_db(LinkKind kind, double distance_m, double floor_db)
{
    if (!(distance_m > 0.0))
        throw std::invalid_argument("pathloss_db: distance must be positive");
    const double d_km = distance_m / 1000.0;
    const double pl = kind == LinkKind::macro_to_ue ? 128.1 + 37.6 * std::log10(d_km)
                                                    : 140.7 + 36.7 * std::log10(d_km);
    return std::max(pl, floor_db);
}

double sinr_linear(double rx_mw, double interference_mw, double noise_mw)
{
    const double denom = interference_mw + noise_mw;
    if (!(denom > 0.0))
        throw std::invalid_argument("sinr_linear: interference + noise must be positive");
    return std::max(rx_mw, 0.0) / denom;
}

double licensed_rate_bps(double sinr, double bandwidth_hz, double sinr_cap_db)
{
    if (sinr < 0.0)
        throw std::invalid_argument("licensed_rate_bps: sinr must be >= 0");
    const double cap = db_to_linear(sinr_cap_db);
    return bandwidth_hz * std::log2(1.0 + std::min(sinr, cap));
}

double wifi_share_bps(std::int64_t contenders, double capacity_bps, double e_max, double gamma)
{
    if (contenders < 0)
        throw std::invalid_argument("wifi_share_bps: contenders must be >= 0");
    if (contenders == 0)
        return 0.0;
    const double n = static_cast<double>(contenders);
    const double efficiency = e_max / (1.0 + gamma * (n - 1.0));
    return efficiency * capacity_bps / n;
}

WifiCell wifi_cell_state(std::int64_t contenders, double capacity_bps, double e_max, double gamma)
{
    WifiCell cell;
    cell.contenders = contenders;
    cell.per_station_share_bps = wifi_share_bps(contenders, capacity_bps, e_max, gamma);
    cell.efficiency =
        contenders == 0 ? e_max : e_max / (1.0 + gamma * (static_cast<double>(contenders) - 1.0));
    return cell;
}

double rsrp_dbm(double ref_power_dbm, double pathloss_db)
{
    return ref_power_dbm - pathloss_db;
}

double noise_power_mw(double noise_density_dbm_hz, double bandwidth_hz)
{
    return dbm_to_mw(noise_density_dbm_hz) * bandwidth_hz;
}

LinkBudget evaluate_link(const Vec2& ue, const StationTx& server, std::span<const StationTx> others,
                         int subband, double subband_hz, const RadioParams& params)
{
    LinkBudget budget;
    budget.pathloss_db =
        pathloss_db(server.kind, distance(ue, server.position), params.pathloss_floor_db) +
        server.shadow_db;
    const double rx_mw = server.tx_power_mw / db_to_linear(budget.pathloss_db);
    budget.rx_power_dbm = mw_to_dbm(rx_mw);
    budget.noise_mw = noise_power_mw(params.noise_density_dbm_hz, subband_hz);

    double interference = 0.0;
    for (const StationTx& tx : others) {
        if (tx.subband != subband)
            continue;
        const double pl =
            pathloss_db(tx.kind, distance(ue, tx.position), params.pathloss_floor_db) + tx.shadow_db;
        interference += tx.tx_power_mw / db_to_linear(pl);
    }
    budget.interference_mw = interference;
    budget.sinr = sinr_linear(rx_mw, interference, budget.noise_mw);
    budget.rate_bps = rx_mw > 0.0 ? licensed_rate_bps(budget.sinr, subband_hz, params.sinr_cap_db) : 0.0;
    return budget;
}

} // namespace hetsim
