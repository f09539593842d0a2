#include "hetsim/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hetsim {

void ScenarioConfig::validate() const
{
    auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };

    if (num_small_cells < 0)
        fail("num_small_cells must be >= 0");
    if (num_ues_per_sector < 1)
        fail("num_ues_per_sector must be >= 1");
    if (power_levels < 1)
        fail("power_levels must be >= 1");
    if (num_subbands_licensed < 1)
        fail("num_subbands_licensed must be >= 1");
    if (num_subbands_unlicensed < 1)
        fail("num_subbands_unlicensed must be >= 1");
    if (bias_levels < 1)
        fail("bias_levels must be >= 1");
    if (static_cast<std::int64_t>(bias_values.size()) != bias_levels)
        fail("bias_values must have exactly bias_levels entries");
    for (std::size_t i = 0; i < bias_values.size(); ++i) {
        if (bias_values[i] < 0.0)
            fail("bias_values must be non-negative");
        if (i > 0 && bias_values[i] <= bias_values[i - 1])
            fail("bias_values must be strictly increasing");
    }
    if (!std::isfinite(max_power))
        fail("max_power must be finite");
    if (!std::isfinite(macro_power) || !std::isfinite(unlicensed_power))
        fail("station powers must be finite");
    if (!(bandwidth_licensed > 0.0) || !(bandwidth_unlicensed > 0.0))
        fail("bandwidths must be positive");
    if (tti_count < 0)
        fail("tti_count must be >= 0");
    if (speed < 0.0)
        fail("speed must be >= 0");
    if (!(sector_radius > 0.0))
        fail("sector_radius must be positive");
    if (!(min_mbs_scbs_distance >= 0.0))
        fail("min_mbs_scbs_distance must be >= 0");
    if (!(hotspot_radius > 0.0))
        fail("hotspot_radius must be positive");
    if (!(ewma_factor > 0.0 && ewma_factor <= 1.0))
        fail("ewma_factor must be in (0, 1]");
    if (!(rate_floor > 0.0))
        fail("rate_floor must be positive");
    if (!(urgency_floor > 0.0 && urgency_floor <= 1.0))
        fail("urgency_floor must be in (0, 1]");
    if (!(kappa0 > 0.0))
        fail("kappa0 must be positive");
    if (!(kappa_tau > 0.0))
        fail("kappa_tau must be positive");
    if (cellular_period_ttis < 1)
        fail("cellular_period_ttis must be >= 1");
    if (load_threshold < 0)
        fail("load_threshold must be >= 0");
    if (reassociation_period_ttis < 1)
        fail("reassociation_period_ttis must be >= 1");
    if (!(wifi_efficiency_max > 0.0 && wifi_efficiency_max <= 1.0))
        fail("wifi_efficiency_max must be in (0, 1]");
    if (wifi_efficiency_gamma < 0.0)
        fail("wifi_efficiency_gamma must be >= 0");
    if (!(wifi_spectral_efficiency > 0.0))
        fail("wifi_spectral_efficiency must be positive");
    if (warmup_ttis < 0)
        fail("warmup_ttis must be >= 0");
    if (!(convergence_threshold > 0.0))
        fail("convergence_threshold must be positive");
    if (convergence_window < 1)
        fail("convergence_window must be >= 1");
    if (utility_max <= utility_min)
        fail("utility_max must exceed utility_min");
    if (traffic.ftp_file_bits < 1)
        fail("traffic.ftp.file_size_bits must be >= 1");
    if (!(traffic.http_page_mean_bits > 0.0))
        fail("traffic.http.page_mean_bits must be positive");
    if (traffic.video_chunk_ms < 1 || traffic.voip_period_ms < 1 || traffic.gaming_period_ms < 1)
        fail("traffic periods must be >= 1 ms");
}

namespace {

class FieldTable {
public:
    explicit FieldTable(ScenarioConfig& c)
    {
        add_int("num_small_cells", c.num_small_cells);
        add_int("num_ues_per_sector", c.num_ues_per_sector);
        add_int("num_subbands_licensed", c.num_subbands_licensed);
        add_int("num_subbands_unlicensed", c.num_subbands_unlicensed);
        add_int("power_levels", c.power_levels);
        add_int("bias_levels", c.bias_levels);
        add_list("bias_values", c.bias_values);
        add_double("max_power", c.max_power);
        add_double("macro_power", c.macro_power);
        add_double("unlicensed_power", c.unlicensed_power);
        add_double("bandwidth_licensed", c.bandwidth_licensed);
        add_double("bandwidth_unlicensed", c.bandwidth_unlicensed);
        add_int("tti_count", c.tti_count);
        add_int("seed", c.seed);
        add_double("speed", c.speed);
        add_double("sector_radius", c.sector_radius);
        add_double("min_mbs_scbs_distance", c.min_mbs_scbs_distance);
        add_double("hotspot_radius", c.hotspot_radius);
        add_bool("shadowing", c.shadowing);
        add_double("shadowing_sigma_db", c.shadowing_sigma_db);
        add_double("noise_density_dbm_hz", c.noise_density_dbm_hz);
        add_double("sinr_cap_db", c.sinr_cap_db);
        add_double("pathloss_floor_db", c.pathloss_floor_db);
        add_double("wifi_efficiency_max", c.wifi_efficiency_max);
        add_double("wifi_efficiency_gamma", c.wifi_efficiency_gamma);
        add_double("wifi_spectral_efficiency", c.wifi_spectral_efficiency);
        add_int("load_threshold", c.load_threshold);
        add_double("rsrp_threshold", c.rsrp_threshold);
        add_int("reassociation_period_ttis", c.reassociation_period_ttis);
        add_double("wifi_coverage_radius", c.wifi_coverage_radius);
        add_double("ewma_factor", c.ewma_factor);
        add_double("rate_floor", c.rate_floor);
        add_double("urgency_floor", c.urgency_floor);
        add_double("kappa0", c.kappa0);
        add_double("kappa_tau", c.kappa_tau);
        add_bool("kappa_constant", c.kappa_constant);
        add_int("cellular_period_ttis", c.cellular_period_ttis);
        add_bool("exact_counterfactual", c.exact_counterfactual);
        add_double("wifi_summary_alpha", c.wifi_summary_alpha);
        add_double("utility_min", c.utility_min);
        add_double("utility_max", c.utility_max);
        add_int("warmup_ttis", c.warmup_ttis);
        add_double("convergence_threshold", c.convergence_threshold);
        add_int("convergence_window", c.convergence_window);
        add_double("oscillation_alpha", c.oscillation_alpha);

        add_int("traffic.ftp.file_size_bits", c.traffic.ftp_file_bits);
        add_double("traffic.http.page_mean_bits", c.traffic.http_page_mean_bits);
        add_double("traffic.http.page_sigma", c.traffic.http_page_sigma);
        add_double("traffic.http.page_max_bits", c.traffic.http_page_max_bits);
        add_double("traffic.http.reading_mean_ms", c.traffic.http_reading_mean_ms);
        add_double("traffic.video.rate_bps", c.traffic.video_rate_bps);
        add_int("traffic.video.chunk_ms", c.traffic.video_chunk_ms);
        add_int("traffic.video.delay_budget_ms", c.traffic.video_budget_ms);
        add_int("traffic.voip.period_ms", c.traffic.voip_period_ms);
        add_int("traffic.voip.packet_bits", c.traffic.voip_packet_bits);
        add_int("traffic.voip.delay_budget_ms", c.traffic.voip_budget_ms);
        add_int("traffic.gaming.period_ms", c.traffic.gaming_period_ms);
        add_int("traffic.gaming.packet_bits", c.traffic.gaming_packet_bits);
        add_int("traffic.gaming.delay_budget_ms", c.traffic.gaming_budget_ms);
        add_double("traffic.gaming.jitter_sigma", c.traffic.gaming_jitter_sigma);
    }

    void set(const std::string& key, const std::string& value)
    {
        auto it = setters_.find(key);
        if (it == setters_.end())
            throw std::invalid_argument("config: unknown key '" + key + "'");
        it->second(value);
    }

private:
    static double parse_double(const std::string& key, const std::string& v)
    {
        std::size_t pos = 0;
        double x = 0.0;
        try {
            x = std::stod(v, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("config: bad numeric value for '" + key + "'");
        }
        if (pos != v.size())
            throw std::invalid_argument("config: trailing characters in value for '" + key + "'");
        return x;
    }

    void add_double(const std::string& key, double& field)
    {
        setters_[key] = [key, &field](const std::string& v) { field = parse_double(key, v); };
    }

    void add_int(const std::string& key, std::int64_t& field)
    {
        setters_[key] = [key, &field](const std::string& v) {
            const double x = parse_double(key, v);
            if (x != std::floor(x))
                throw std::invalid_argument("config: '" + key + "' must be an integer");
            field = static_cast<std::int64_t>(x);
        };
    }

    void add_bool(const std::string& key, bool& field)
    {
        setters_[key] = [key, &field](const std::string& v) {
            if (v == "true" || v == "1")
                field = true;
            else if (v == "false" || v == "0")
                field = false;
            else
                throw std::invalid_argument("config: '" + key + "' must be true/false");
        };
    }

    void add_list(const std::string& key, std::vector<double>& field)
    {
        setters_[key] = [key, &field](const std::string& v) {
            std::vector<double> values;
            std::stringstream ss(v);
            std::string item;
            while (std::getline(ss, item, ','))
                values.push_back(parse_double(key, item));
            if (values.empty())
                throw std::invalid_argument("config: empty list for '" + key + "'");
            field = std::move(values);
        };
    }

    std::map<std::string, std::function<void(const std::string&)>> setters_;
};

std::string strip(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

} // namespace

ScenarioConfig parse_config_text(const std::string& text)
{
    ScenarioConfig config;
    FieldTable table(config);

    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = strip(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) + " is not key=value");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        table.set(key, value);
    }
    config.validate();
    return config;
}

ScenarioConfig parse_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("config: cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

} // namespace hetsim
