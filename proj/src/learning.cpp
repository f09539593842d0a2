#include "hetsim/learning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hetsim {

const char* learner_name(LearnerKind k)
{
    switch (k) {
    case LearnerKind::cross:
        return "cross";
    case LearnerKind::independent:
        return "independent";
    case LearnerKind::random:
        return "random";
    }
    return "?";
}

LearnerState LearnerState::init(ActionSet actions, LearnerConfig config)
{
    if (actions.empty())
        throw std::invalid_argument("LearnerState: empty action set");
    LearnerState s;
    const std::size_t n = actions.size();
    s.actions = std::move(actions);
    s.strategy.assign(n, 1.0 / static_cast<double>(n));
    s.regrets.assign(n, 0.0);
    s.utility_estimates.assign(n, 0.0);
    s.counts.assign(n, 0);
    s.config = config;
    return s;
}

double LearnerState::kappa() const
{
    if (config.kappa_constant)
        return config.kappa0;
    return config.kappa0 * (1.0 + static_cast<double>(t) / config.kappa_tau);
}

std::vector<double> boltzmann_gibbs(std::span<const double> positive_regrets, double kappa)
{
    if (positive_regrets.empty())
        throw std::invalid_argument("boltzmann_gibbs: empty regret vector");
    if (!(kappa > 0.0))
        throw std::invalid_argument("boltzmann_gibbs: kappa must be positive");

    double max_r = positive_regrets[0];
    for (double r : positive_regrets) {
        if (!std::isfinite(r))
            throw std::invalid_argument("boltzmann_gibbs: non-finite regret");
        if (r < 0.0)
            throw std::invalid_argument("boltzmann_gibbs: regrets must be clamped at zero");
        max_r = std::max(max_r, r);
    }

    std::vector<double> beta(positive_regrets.size());
    double total = 0.0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        beta[i] = std::exp(kappa * (positive_regrets[i] - max_r));
        total += beta[i];
    }
    for (double& b : beta)
        b /= total;
    return beta;
}

std::vector<double> solve_behavioral_rule(std::span<const double> regrets, double kappa)
{
    std::vector<double> clamped(regrets.size());
    for (std::size_t i = 0; i < regrets.size(); ++i)
        clamped[i] = std::max(0.0, regrets[i]);
    return boltzmann_gibbs(clamped, kappa);
}

void estimate_utilities(LearnerState& state, std::size_t chosen_action, double realized_utility)
{
    if (chosen_action >= state.actions.size())
        throw std::out_of_range("estimate_utilities: action index out of range");
    std::int64_t& count = state.counts[chosen_action];
    ++count;
    double& estimate = state.utility_estimates[chosen_action];
    estimate += (realized_utility - estimate) / static_cast<double>(count);
}

void update_regrets(LearnerState& state, double realized_utility,
                    std::span<const double> counterfactual_utilities)
{
    if (counterfactual_utilities.size() != state.regrets.size())
        throw std::invalid_argument("update_regrets: counterfactual size mismatch");
    for (double u : counterfactual_utilities)
        if (!std::isfinite(u))
            throw std::invalid_argument("update_regrets: non-finite counterfactual utility");

    const double t_new = static_cast<double>(state.t + 1);
    for (std::size_t a = 0; a < state.regrets.size(); ++a) {
        const double instant = counterfactual_utilities[a] - realized_utility;
        state.regrets[a] =
            (static_cast<double>(state.t) * state.regrets[a] + instant) / t_new;
    }
    ++state.t;
}

void learner_step(LearnerState& state, std::size_t chosen_action, double realized_utility)
{
    estimate_utilities(state, chosen_action, realized_utility);
    update_regrets(state, realized_utility, state.utility_estimates);
    state.strategy = solve_behavioral_rule(state.regrets, state.kappa());
}

void learner_step_exact(LearnerState& state, std::size_t chosen_action, double realized_utility,
                        std::span<const double> counterfactual_utilities)
{
    estimate_utilities(state, chosen_action, realized_utility);
    update_regrets(state, realized_utility, counterfactual_utilities);
    state.strategy = solve_behavioral_rule(state.regrets, state.kappa());
}

std::size_t sample_action(const LearnerState& state, RngStream& rng)
{
    return rng.categorical(state.strategy);
}

double scbs_utility(std::span<const double> served_throughput_bps, double cap_bps)
{
    if (!(cap_bps > 0.0))
        throw std::invalid_argument("scbs_utility: cap must be positive");
    double total = 0.0;
    for (double thr : served_throughput_bps) {
        if (thr < 0.0)
            throw std::invalid_argument("scbs_utility: negative throughput");
        total += std::log1p(thr);
    }
    return std::clamp(total / std::log1p(cap_bps), 0.0, 1.0);
}

namespace {

void apply_step(LearnerState& state, std::ptrdiff_t action, double utility,
                std::span<const double> counterfactuals)
{
    if (counterfactuals.empty())
        learner_step(state, static_cast<std::size_t>(action), utility);
    else
        learner_step_exact(state, static_cast<std::size_t>(action), utility, counterfactuals);
}

} // namespace

bool cross_system_step(LearnerState& cellular, LearnerState& wifi, CrossSystemClock& clock,
                       const BandFeedback& feedback)
{
    if (clock.cellular_period < 1)
        throw std::invalid_argument("cross_system_step: cellular_period must be >= 1");

    if (feedback.wifi_action >= 0) {
        apply_step(wifi, feedback.wifi_action, feedback.wifi_utility, feedback.wifi_counterfactuals);
        clock.wifi_summary = (1.0 - clock.wifi_summary_alpha) * clock.wifi_summary +
                             clock.wifi_summary_alpha * feedback.wifi_utility;
    }

    const bool cellular_due = (clock.tti + 1) % clock.cellular_period == 0;
    bool updated = false;
    if (feedback.cellular_action >= 0) {
        if (!cellular_due)
            throw std::logic_error("cross_system_step: cellular feedback off its epoch boundary");
        apply_step(cellular, feedback.cellular_action, feedback.cellular_utility_exclusive,
                   feedback.cellular_counterfactuals);
        updated = true;
    }
    ++clock.tti;
    return updated;
}

bool independent_rl_step(LearnerState& cellular, LearnerState& wifi, CrossSystemClock& clock,
                         const BandFeedback& feedback)
{
    if (feedback.wifi_action >= 0)
        apply_step(wifi, feedback.wifi_action, feedback.wifi_utility, feedback.wifi_counterfactuals);

    bool updated = false;
    if (feedback.cellular_action >= 0) {
        apply_step(cellular, feedback.cellular_action, feedback.cellular_utility_total,
                   feedback.cellular_counterfactuals);
        updated = true;
    }
    ++clock.tti;
    return updated;
}

} // namespace hetsim
