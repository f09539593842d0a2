#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hetsim/engine.hpp"

using namespace hetsim;

int main(int argc, char** argv)
{
    CLI::App app{"Macrocell network simulator with dual-mode small cells"};

    std::string config_path;
    std::string preset_name;
    std::string policy = "proposed";
    std::string scheduler = "ps";
    std::string learner = "cross";
    std::string out_dir = "out";
    std::int64_t ttis = -1;
    std::int64_t seed = -1;
    int jobs = 1;
    bool list_presets = false;

    app.add_option("--config", config_path, "Scenario configuration file (key=value lines)");
    app.add_option("--preset", preset_name, "Run a scenario preset (see --list-presets)");
    app.add_option("--policy", policy,
                   "macro-only|hetnet|hetnet-wifi-load|hetnet-wifi-coverage|proposed");
    app.add_option("--scheduler", scheduler, "pf|edf|ps");
    app.add_option("--learner", learner, "cross|independent|random");
    app.add_option("--ttis", ttis, "Override the configured TTI count");
    app.add_option("--seed", seed, "Override the configured master seed");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--jobs", jobs, "Concurrent runs when executing a preset");
    app.add_flag("--list-presets", list_presets, "List preset names and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_presets) {
            for (const std::string& name : preset_names())
                std::cout << name << '\n';
            return 0;
        }

        ScenarioConfig config;
        if (!config_path.empty())
            config = parse_config_file(config_path);
        if (seed >= 0)
            config.seed = seed;
        if (ttis >= 0)
            config.tti_count = ttis;
        config.validate();

        if (!preset_name.empty()) {
            std::vector<RunSpec> runs = preset(preset_name, config.seed);
            if (ttis >= 0)
                for (RunSpec& r : runs)
                    r.config.tti_count = ttis;
            run_preset(runs, out_dir, jobs);
            for (const RunSpec& r : runs)
                std::cout << "wrote " << out_dir << '/' << r.name << '\n';
            return 0;
        }

        SchedulerKind sched_kind;
        if (scheduler == "pf")
            sched_kind = SchedulerKind::pf;
        else if (scheduler == "edf")
            sched_kind = SchedulerKind::edf;
        else if (scheduler == "ps")
            sched_kind = SchedulerKind::ps;
        else
            throw std::invalid_argument("unknown scheduler '" + scheduler + "'");

        LearnerKind learner_kind;
        if (learner == "cross")
            learner_kind = LearnerKind::cross;
        else if (learner == "independent")
            learner_kind = LearnerKind::independent;
        else if (learner == "random")
            learner_kind = LearnerKind::random;
        else
            throw std::invalid_argument("unknown learner '" + learner + "'");

        RunSpec spec;
        spec.config = config;
        spec.policy = policy_from_name(policy);
        spec.scheduler = sched_kind;
        spec.learner = learner_kind;
        spec.name = policy + "_" + scheduler + "_" + learner + "_seed" +
                    std::to_string(config.seed);

        std::vector<TtiMetrics> stream;
        const RunSummary summary = run_simulation(spec, &stream);
        write_run_outputs(out_dir, spec, stream, summary);
        std::cout << "wrote " << out_dir << '/' << spec.name << '\n';
        std::cout << "cell_throughput_bps=" << format_g9(summary.cell_throughput)
                  << " cell_edge_bps=" << format_g9(summary.cell_edge_throughput)
                  << " median_bps=" << format_g9(summary.median_throughput)
                  << " convergence_epoch=" << summary.convergence_epoch << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
