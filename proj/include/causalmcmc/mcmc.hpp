#ifndef CAUSALMCMC_MCMC_HPP_
#define CAUSALMCMC_MCMC_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "causalmcmc/dag.hpp"
#include "causalmcmc/dataset.hpp"
#include "causalmcmc/likelihood.hpp"

namespace causalmcmc {

enum class ChainMode { kMallows, kUniform };

// Random-walk configuration. Defaults follow the benchmark protocol: 50,000
// iterations with 5,000 burn-in and thinning every 50, temperature tuned on a
// grid 0.2..1.5 by 0.1 with 1,000-iteration trial runs targeting a 30-40%
// acceptance rate.
struct ChainConfig {
    int iterations = 50000;
    int burn_in = 5000;
    int thin = 50;
    std::vector<double> eta_grid = default_eta_grid();
    int trial_iterations = 1000;
    std::pair<double, double> target_acceptance = {0.30, 0.40};
    std::uint64_t seed = 0;
    ChainMode mode = ChainMode::kMallows;
    // Explicit temperature; when unset, run_chain tunes on eta_grid first.
    std::optional<double> eta;

    static std::vector<double> default_eta_grid();
    void validate() const;
};

struct TraceEntry {
    int iteration;
    double loglik;  // of the current state after the step
    bool accepted;
};

struct ChainSample {
    NodeOrdering ordering;
    double loglik;
    Eigen::MatrixXd effects;  // total effects of the fitted model, original labels
};

struct ChainResult {
    std::vector<ChainSample> samples;
    std::vector<TraceEntry> trace;
    double acceptance_rate = 0.0;
    std::optional<double> chosen_eta;

    NodeOrdering best_ordering;
    double best_loglik = 0.0;
    Eigen::MatrixXd best_effects;

    // order_distribution(i, q): fraction of retained samples placing node i at
    // position q; rows and columns each sum to 1.
    Eigen::MatrixXd order_distribution;
    // Element-wise mean of the retained effect matrices; the default effect
    // estimate consumed by evaluation.
    Eigen::MatrixXd posterior_effects;

    ChainResult() : best_ordering(std::vector<int>{0}) {}
};

struct TuneTrial {
    double eta;
    double acceptance_rate;
};

struct TuneResult {
    double eta = 0.0;
    std::vector<TuneTrial> trials;
};

// Grid value whose trial acceptance rate is nearest the target midpoint; ties
// break toward the smaller eta.
double pick_eta(const std::vector<TuneTrial>& trials, double target_midpoint);

// Short trial runs over config.eta_grid; deterministic under config.seed.
TuneResult tune_temperature(const Dataset& data, const ChainConfig& config);

// Metropolis-Hastings over causal orderings targeting the profile likelihood.
// Mallows mode proposes from the symmetric Mallows kernel around the current
// ordering and accepts with probability min{1, exp(l* - l_t)}; uniform mode
// draws orderings i.i.d. with no accept/reject step. Fully reproducible under
// a fixed seed.
ChainResult run_chain(const Dataset& data, const ChainConfig& config);

struct ChainSummary {
    Eigen::MatrixXd order_distribution;
    Eigen::MatrixXd posterior_effects;
    NodeOrdering best_ordering;
    double best_loglik = 0.0;
    Eigen::MatrixXd best_effects;
    double acceptance_rate = 0.0;

    ChainSummary() : best_ordering(std::vector<int>{0}) {}
};

// Recomputes the posterior summaries from the retained samples; requires at
// least one.
ChainSummary summarize(const ChainResult& result);

}  // namespace causalmcmc

#endif  // CAUSALMCMC_MCMC_HPP_
