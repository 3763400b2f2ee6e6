#include "causalmcmc/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "causalmcmc/gbn.hpp"
#include "causalmcmc/mallows.hpp"
#include "causalmcmc/seeding.hpp"

namespace causalmcmc {

namespace {

struct EngineOutput {
    std::vector<ChainSample> samples;
    std::vector<TraceEntry> trace;
    double acceptance_rate = 0.0;
    NodeOrdering best_ordering;
    double best_loglik = 0.0;
    GbnParams best_params;

    EngineOutput() : best_ordering(std::vector<int>{0}) {}
};

// One Metropolis-Hastings (or i.i.d. uniform) walk. The symmetric Mallows
// kernel cancels in the acceptance ratio, which reduces to the profile
// log-likelihood difference.
EngineOutput run_engine(const Dataset& data, ChainMode mode, double eta, int iterations, int burn_in,
                        int thin, Rng& rng, bool collect) {
    const int p = data.node_count();

    NodeOrdering current(rng.permutation(p));
    FitResult current_fit = fit_mle(data, current);
    double current_ll = current_fit.loglik;

    EngineOutput out;
    out.best_ordering = current;
    out.best_loglik = current_ll;
    out.best_params = current_fit.params;
    if (collect) {
        out.trace.reserve(iterations);
        out.samples.reserve((iterations - burn_in) / thin + 1);
    }

    long long accepted_count = 0;
    for (int t = 1; t <= iterations; ++t) {
        bool accepted = false;
        if (mode == ChainMode::kUniform) {
            current = NodeOrdering(rng.permutation(p));
            current_fit = fit_mle(data, current);
            current_ll = current_fit.loglik;
            accepted = true;
        } else {
            const MallowsParams kernel = MallowsParams::from_eta(eta, current);
            NodeOrdering proposal = mallows_sample(kernel, rng);
            FitResult proposal_fit = fit_mle(data, proposal);
            const double log_ratio = proposal_fit.loglik - current_ll;
            if (log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio) {
                current = std::move(proposal);
                current_fit = std::move(proposal_fit);
                current_ll = current_fit.loglik;
                accepted = true;
            }
        }
        if (accepted) {
            ++accepted_count;
            if (current_ll > out.best_loglik) {
                out.best_loglik = current_ll;
                out.best_ordering = current;
                out.best_params = current_fit.params;
            }
        }
        if (collect) {
            out.trace.push_back({t, current_ll, accepted});
            if (t > burn_in && (t - burn_in) % thin == 0) {
                out.samples.push_back(
                    {current, current_ll, total_effects(current_fit.params, current).values});
            }
        }
    }
    out.acceptance_rate = static_cast<double>(accepted_count) / iterations;
    return out;
}

void summarize_samples(const std::vector<ChainSample>& samples, Eigen::MatrixXd& order_distribution,
                       Eigen::MatrixXd& posterior_effects) {
    if (samples.empty()) throw std::invalid_argument("summarize: no retained samples");
    const int p = samples.front().ordering.size();
    order_distribution = Eigen::MatrixXd::Zero(p, p);
    posterior_effects = Eigen::MatrixXd::Zero(p, p);
    for (const auto& sample : samples) {
        for (int node = 0; node < p; ++node)
            order_distribution(node, sample.ordering.position_of(node)) += 1.0;
        posterior_effects += sample.effects;
    }
    order_distribution /= static_cast<double>(samples.size());
    posterior_effects /= static_cast<double>(samples.size());
}

void require_identifiable(const Dataset& data) {
    for (int j = 0; j < data.node_count(); ++j)
        if (!data.samples_observing(j).empty()) return;
    throw std::runtime_error("run_chain: every node is intervened in every sample");
}

}  // namespace

std::vector<double> ChainConfig::default_eta_grid() {
    std::vector<double> grid;
    for (int i = 2; i <= 15; ++i) grid.push_back(i / 10.0);
    return grid;
}

void ChainConfig::validate() const {
    if (iterations < 1) throw std::invalid_argument("ChainConfig: iterations must be >= 1");
    if (burn_in < 0 || burn_in >= iterations)
        throw std::invalid_argument("ChainConfig: burn_in must satisfy 0 <= burn_in < iterations");
    if (thin < 1) throw std::invalid_argument("ChainConfig: thin must be >= 1");
    if (iterations - burn_in < thin)
        throw std::invalid_argument("ChainConfig: no sample would be retained");
    if (mode == ChainMode::kMallows && !eta && eta_grid.empty())
        throw std::invalid_argument("ChainConfig: eta_grid must be non-empty in mallows mode");
    if (eta && !(*eta > 0.0)) throw std::invalid_argument("ChainConfig: eta must be > 0");
    if (trial_iterations < 1) throw std::invalid_argument("ChainConfig: trial_iterations must be >= 1");
    if (!(target_acceptance.first >= 0.0) || !(target_acceptance.second <= 1.0) ||
        target_acceptance.first > target_acceptance.second)
        throw std::invalid_argument("ChainConfig: invalid target acceptance interval");
}

double pick_eta(const std::vector<TuneTrial>& trials, double target_midpoint) {
    if (trials.empty()) throw std::invalid_argument("pick_eta: no trials");
    std::vector<TuneTrial> sorted = trials;
    std::sort(sorted.begin(), sorted.end(),
              [](const TuneTrial& a, const TuneTrial& b) { return a.eta < b.eta; });
    double best_eta = sorted.front().eta;
    double best_gap = std::abs(sorted.front().acceptance_rate - target_midpoint);
    for (const auto& trial : sorted) {
        const double gap = std::abs(trial.acceptance_rate - target_midpoint);
        if (gap < best_gap) {
            best_gap = gap;
            best_eta = trial.eta;
        }
    }
    return best_eta;
}

TuneResult tune_temperature(const Dataset& data, const ChainConfig& config) {
    config.validate();
    data.validate();
    require_identifiable(data);
    if (config.mode != ChainMode::kMallows)
        throw std::invalid_argument("tune_temperature: requires mallows mode");
    if (config.eta_grid.empty()) throw std::invalid_argument("tune_temperature: empty eta grid");

    TuneResult result;
    for (std::size_t i = 0; i < config.eta_grid.size(); ++i) {
        Rng rng(derive_seed(config.seed, {tag("tune"), static_cast<std::uint64_t>(i)}));
        EngineOutput trial = run_engine(data, ChainMode::kMallows, config.eta_grid[i],
                                        config.trial_iterations, 0, config.trial_iterations, rng,
                                        /*collect=*/false);
        result.trials.push_back({config.eta_grid[i], trial.acceptance_rate});
    }
    const double midpoint = 0.5 * (config.target_acceptance.first + config.target_acceptance.second);
    result.eta = pick_eta(result.trials, midpoint);
    return result;
}

ChainResult run_chain(const Dataset& data, const ChainConfig& config) {
    config.validate();
    data.validate();
    require_identifiable(data);

    ChainResult result;
    double eta = 0.0;
    if (config.mode == ChainMode::kMallows) {
        eta = config.eta ? *config.eta : tune_temperature(data, config).eta;
        result.chosen_eta = eta;
    }

    Rng rng(derive_seed(config.seed, {tag("chain")}));
    EngineOutput run = run_engine(data, config.mode, eta, config.iterations, config.burn_in,
                                  config.thin, rng, /*collect=*/true);

    result.samples = std::move(run.samples);
    result.trace = std::move(run.trace);
    result.acceptance_rate = run.acceptance_rate;
    result.best_ordering = run.best_ordering;
    result.best_loglik = run.best_loglik;
    result.best_effects = total_effects(run.best_params, run.best_ordering).values;
    summarize_samples(result.samples, result.order_distribution, result.posterior_effects);
    return result;
}

ChainSummary summarize(const ChainResult& result) {
    ChainSummary summary;
    summarize_samples(result.samples, summary.order_distribution, summary.posterior_effects);
    summary.best_ordering = result.best_ordering;
    summary.best_loglik = result.best_loglik;
    summary.best_effects = result.best_effects;
    summary.acceptance_rate = result.acceptance_rate;
    return summary;
}

}  // namespace causalmcmc
