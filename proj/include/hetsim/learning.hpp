#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hetsim/model.hpp"
#include "hetsim/rng.hpp"

namespace hetsim {

enum class LearnerKind { cross, independent, random };

const char* learner_name(LearnerKind k);

struct LearnerConfig {
    double kappa0 = 5.0;
    double kappa_tau = 100.0;
    bool kappa_constant = false;
    double utility_min = 0.0;
    double utility_max = 1.0;
};

// Full regret-learning state of one SCBS on one band.
struct LearnerState {
    ActionSet actions;
    std::vector<double> strategy;          // mixed strategy, full support
    std::vector<double> regrets;           // running averages, utility units
    std::vector<double> utility_estimates; // per-action running averages
    std::vector<std::int64_t> counts;      // per-action play counts
    LearnerConfig config;
    std::int64_t t = 0; // completed updates

    static LearnerState init(ActionSet actions, LearnerConfig config);

    // Temperature, slowly sharpening unless pinned constant.
    double kappa() const;
};

// Exponential-in-regret mixed strategy with temperature kappa, computed with
// max-subtraction so large regrets cannot overflow. Every entry is strictly
// positive and the entries sum to one.
std::vector<double> boltzmann_gibbs(std::span<const double> positive_regrets, double kappa);

// Entropy-regularized behavioral rule: clamps regrets at zero and applies
// the Boltzmann-Gibbs solution, the unique optimizer of
//   max_pi  sum_a pi_a r+_a + (1/kappa) H(pi)
// over the simplex.
std::vector<double> solve_behavioral_rule(std::span<const double> regrets, double kappa);

// Decreasing-step running average for the chosen action's utility estimate.
void estimate_utilities(LearnerState& state, std::size_t chosen_action, double realized_utility);

// Time-averaged regret recursion: for every action a,
//   r_a(t) = ((t-1) r_a(t-1) + (u_hat_a(t) - u_realized(t))) / t.
void update_regrets(LearnerState& state, double realized_utility,
                    std::span<const double> counterfactual_utilities);

// estimate -> regret -> strategy, a full learner update.
void learner_step(LearnerState& state, std::size_t chosen_action, double realized_utility);

// Same, with externally supplied counterfactual utilities (exact
// counterfactual mode); the chosen action's running estimate still tracks
// the realized value.
void learner_step_exact(LearnerState& state, std::size_t chosen_action, double realized_utility,
                        std::span<const double> counterfactual_utilities);

std::size_t sample_action(const LearnerState& state, RngStream& rng);

// Concave per-cell utility: sum over served UEs of log(1 + throughput),
// normalized into [0, 1] by the configured cap (one UE at cap scores 1).
double scbs_utility(std::span<const double> served_throughput_bps, double cap_bps);

// Two-timescale clock: the WiFi learner steps every TTI, the cellular
// learner every cellular_period TTIs.
struct CrossSystemClock {
    std::int64_t cellular_period = 10;
    std::int64_t tti = 0;
    double wifi_summary = 0.0; // smoothed unlicensed utility
    double wifi_summary_alpha = 0.1;
};

struct BandFeedback {
    std::ptrdiff_t wifi_action = -1; // -1: no unlicensed transmission
    double wifi_utility = 0.0;
    std::ptrdiff_t cellular_action = -1;
    double cellular_utility_exclusive = 0.0; // cellular-served traffic only
    double cellular_utility_total = 0.0;     // both bands, no exclusion

    // Exact counterfactual utilities evaluated through the radio model;
    // empty spans select the default running per-action estimates.
    std::span<const double> wifi_counterfactuals{};
    std::span<const double> cellular_counterfactuals{};
};

// Coupled update: WiFi every TTI, cellular every cellular_period TTIs with
// the WiFi-carried load excluded from its utility observation. Returns true
// when the cellular learner updated. Throws on clock desynchronization
// (cellular feedback supplied off its epoch boundary).
bool cross_system_step(LearnerState& cellular, LearnerState& wifi, CrossSystemClock& clock,
                       const BandFeedback& feedback);

// Uncoordinated baseline: both learners update every TTI and the cellular
// observation covers total demand.
bool independent_rl_step(LearnerState& cellular, LearnerState& wifi, CrossSystemClock& clock,
                         const BandFeedback& feedback);

} // namespace hetsim
