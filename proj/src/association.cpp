#include "hetsim/association.hpp"

#include <stdexcept>

namespace hetsim {

const char* policy_name(PolicyKind p)
{
    switch (p) {
    case PolicyKind::macro_only:
        return "macro-only";
    case PolicyKind::hetnet:
        return "hetnet";
    case PolicyKind::hetnet_wifi_load:
        return "hetnet-wifi-load";
    case PolicyKind::hetnet_wifi_coverage:
        return "hetnet-wifi-coverage";
    case PolicyKind::proposed:
        return "proposed";
    }
    return "?";
}

PolicyKind policy_from_name(const std::string& name)
{
    if (name == "macro-only")
        return PolicyKind::macro_only;
    if (name == "hetnet")
        return PolicyKind::hetnet;
    if (name == "hetnet-wifi-load")
        return PolicyKind::hetnet_wifi_load;
    if (name == "hetnet-wifi-coverage")
        return PolicyKind::hetnet_wifi_coverage;
    if (name == "proposed")
        return PolicyKind::proposed;
    throw std::invalid_argument("unknown policy '" + name + "'");
}

bool policy_uses_wifi(PolicyKind p)
{
    return p == PolicyKind::hetnet_wifi_load || p == PolicyKind::hetnet_wifi_coverage ||
           p == PolicyKind::proposed;
}

bool policy_uses_learning(PolicyKind p)
{
    return p == PolicyKind::hetnet || p == PolicyKind::proposed;
}

int associate_cellular(std::span<const StationRsrp> stations)
{
    if (stations.empty())
        throw std::invalid_argument("associate_cellular: no active stations");

    const StationRsrp* best = &stations[0];
    for (const StationRsrp& s : stations) {
        const double metric = s.rsrp_dbm + s.bias_db;
        const double best_metric = best->rsrp_dbm + best->bias_db;
        if (metric > best_metric || (metric == best_metric && s.station < best->station))
            best = &s;
    }
    return best->station;
}

bool admit_wifi_load_based(bool delay_tolerant, std::int64_t cell_contenders,
                           std::int64_t threshold)
{
    return delay_tolerant && cell_contenders < threshold;
}

bool admit_wifi_coverage_based(bool delay_tolerant, double unlicensed_rsrp_dbm,
                               double rsrp_threshold_dbm)
{
    return delay_tolerant && unlicensed_rsrp_dbm >= rsrp_threshold_dbm;
}

} // namespace hetsim
