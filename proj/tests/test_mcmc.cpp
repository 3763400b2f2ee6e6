#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "causalmcmc/dag.hpp"
#include "causalmcmc/dataset.hpp"
#include "causalmcmc/mcmc.hpp"
#include "causalmcmc/simulator.hpp"

using namespace causalmcmc;

namespace {

Dataset two_node_ko_data() {
  // Edge 1 -> 2 plus knock-outs of both genes: severing the source shifts
  // gene 2, so the true order dominates the profile likelihood.
  const SimulationModel model = sample_parameters(2, {{0, 1}}, 0.1, 5);
  InterventionDesign design;
  design.experiments.push_back({10, Intervention()});
  design.experiments.push_back({5, Intervention({0}, Eigen::VectorXd::Zero(1))});
  design.experiments.push_back({5, Intervention({1}, Eigen::VectorXd::Zero(1))});
  return simulate(model.params, model.order, design, 6);
}

Dataset observational_data(int p, std::uint64_t seed) {
  std::vector<std::pair<int, int>> structure;
  for (int j = 0; j + 1 < p; ++j) {
    structure.emplace_back(j, j + 1);
  }
  const SimulationModel model = sample_parameters(p, structure, 0.3, seed);
  InterventionDesign design;
  design.experiments.push_back({20, Intervention()});
  return simulate(model.params, model.order, design, seed + 1);
}

ChainConfig short_config(ChainMode mode, double eta) {
  ChainConfig config;
  config.iterations = 600;
  config.burn_in = 100;
  config.thin = 5;
  config.trial_iterations = 50;
  config.mode = mode;
  config.eta = eta;
  config.seed = 17;
  return config;
}

}  // namespace

TEST_CASE("chain config defaults follow the benchmark protocol") {
  const ChainConfig config;
  CHECK(config.iterations == 50000);
  CHECK(config.burn_in == 5000);
  CHECK(config.thin == 50);
  CHECK(config.trial_iterations == 1000);
  CHECK(config.target_acceptance.first == 0.30);
  CHECK(config.target_acceptance.second == 0.40);
  const std::vector<double> grid = ChainConfig::default_eta_grid();
  REQUIRE(grid.size() == 14);
  CHECK(grid.front() == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(grid.back() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK_NOTHROW(config.validate());
}

TEST_CASE("chain config validation rejects inconsistent settings") {
  ChainConfig config = short_config(ChainMode::kMallows, 0.6);
  CHECK_NOTHROW(config.validate());

  ChainConfig no_retain = config;
  no_retain.burn_in = no_retain.iterations;
  CHECK_THROWS_AS(no_retain.validate(), std::invalid_argument);

  ChainConfig bad_thin = config;
  bad_thin.thin = 0;
  CHECK_THROWS_AS(bad_thin.validate(), std::invalid_argument);

  ChainConfig bad_eta = config;
  bad_eta.eta = -0.5;
  CHECK_THROWS_AS(bad_eta.validate(), std::invalid_argument);

  ChainConfig empty_grid = config;
  empty_grid.eta.reset();
  empty_grid.eta_grid.clear();
  CHECK_THROWS_AS(empty_grid.validate(), std::invalid_argument);
  empty_grid.mode = ChainMode::kUniform;  // uniform mode never needs the grid
  CHECK_NOTHROW(empty_grid.validate());

  ChainConfig bad_target = config;
  bad_target.target_acceptance = {0.6, 0.4};
  CHECK_THROWS_AS(bad_target.validate(), std::invalid_argument);
}

TEST_CASE("pick_eta selects the rate nearest the midpoint, ties toward smaller") {
  // Acceptance rates {0.1, 0.36, 0.9} at etas {0.2, 0.6, 1.5}: 0.36 is nearest 0.35.
  const std::vector<TuneTrial> trials = {
      TuneTrial{0.2, 0.1}, TuneTrial{0.6, 0.36}, TuneTrial{1.5, 0.9}};
  CHECK(pick_eta(trials, 0.35) == 0.6);

  // Exact tie in |rate - midpoint|: the smaller eta wins.
  const std::vector<TuneTrial> tie = {TuneTrial{0.4, 0.30}, TuneTrial{0.8, 0.40}};
  CHECK(pick_eta(tie, 0.35) == 0.4);

  CHECK_THROWS_AS(pick_eta({}, 0.35), std::invalid_argument);
}

TEST_CASE("tuning is deterministic and picks from the grid") {
  const Dataset data = two_node_ko_data();
  ChainConfig config = short_config(ChainMode::kMallows, 0.6);
  config.eta.reset();
  config.eta_grid = {0.3, 0.6, 1.2};
  const TuneResult a = tune_temperature(data, config);
  const TuneResult b = tune_temperature(data, config);
  CHECK(a.eta == b.eta);
  REQUIRE(a.trials.size() == 3);
  CHECK(std::find(config.eta_grid.begin(), config.eta_grid.end(), a.eta) != config.eta_grid.end());
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    CHECK(a.trials[i].eta == config.eta_grid[i]);
    CHECK(a.trials[i].acceptance_rate == b.trials[i].acceptance_rate);
    CHECK(a.trials[i].acceptance_rate >= 0.0);
    CHECK(a.trials[i].acceptance_rate <= 1.0);
  }
}

TEST_CASE("run_chain is deterministic under a fixed seed") {
  const Dataset data = two_node_ko_data();
  const ChainConfig config = short_config(ChainMode::kMallows, 0.6);
  const ChainResult a = run_chain(data, config);
  const ChainResult b = run_chain(data, config);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t t = 0; t < a.trace.size(); ++t) {
    CHECK(a.trace[t].loglik == b.trace[t].loglik);
    CHECK(a.trace[t].accepted == b.trace[t].accepted);
  }
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t s = 0; s < a.samples.size(); ++s) {
    CHECK(a.samples[s].ordering == b.samples[s].ordering);
    CHECK(a.samples[s].effects == b.samples[s].effects);
  }
  CHECK(a.posterior_effects == b.posterior_effects);

  ChainConfig other = config;
  other.seed = 18;
  const ChainResult c = run_chain(data, other);
  bool differs = false;
  for (std::size_t t = 0; t < std::min(a.trace.size(), c.trace.size()); ++t) {
    differs = differs || (a.trace[t].loglik != c.trace[t].loglik);
  }
  CHECK(differs);
}

TEST_CASE("retention follows the burn-in and thinning rule") {
  const Dataset data = two_node_ko_data();
  ChainConfig config = short_config(ChainMode::kMallows, 0.6);
  config.iterations = 250;
  config.burn_in = 50;
  config.thin = 20;
  const ChainResult result = run_chain(data, config);
  CHECK(result.trace.size() == 250);
  CHECK(result.trace.front().iteration == 1);
  CHECK(result.trace.back().iteration == 250);
  // Retained iterations: 70, 90, ..., 250.
  CHECK(result.samples.size() == 10);
}

TEST_CASE("uniform mode on observational data has a flat trace and full acceptance") {
  const Dataset data = observational_data(4, 33);
  ChainConfig config = short_config(ChainMode::kUniform, 0.6);
  config.eta.reset();
  const ChainResult result = run_chain(data, config);
  CHECK(result.acceptance_rate == 1.0);
  CHECK(!result.chosen_eta.has_value());
  double lo = result.trace.front().loglik;
  double hi = lo;
  for (const TraceEntry& entry : result.trace) {
    CHECK(entry.accepted);
    lo = std::min(lo, entry.loglik);
    hi = std::max(hi, entry.loglik);
  }
  // Saturated profile likelihood is ordering-invariant on observational data.
  CHECK(hi - lo < 1e-8);
}

TEST_CASE("mallows mode accepts everything on a flat target") {
  const Dataset data = observational_data(3, 44);
  const ChainConfig config = short_config(ChainMode::kMallows, 0.8);
  const ChainResult result = run_chain(data, config);
  CHECK(result.acceptance_rate == 1.0);
}

TEST_CASE("posterior concentrates on the true order for a strong two-node edge") {
  const Dataset data = two_node_ko_data();
  ChainConfig config = short_config(ChainMode::kMallows, 0.6);
  config.iterations = 2000;
  config.burn_in = 200;
  config.thin = 2;
  const ChainResult result = run_chain(data, config);
  int true_order = 0;
  for (const ChainSample& sample : result.samples) {
    if (sample.ordering == NodeOrdering({0, 1})) {
      ++true_order;
    }
  }
  const double mass = static_cast<double>(true_order) / result.samples.size();
  CHECK(mass > 0.9);
  CHECK(result.best_ordering == NodeOrdering({0, 1}));
}

TEST_CASE("best state tracks the maximum of the trace") {
  const Dataset data = two_node_ko_data();
  const ChainResult result = run_chain(data, short_config(ChainMode::kMallows, 1.0));
  double max_trace = result.trace.front().loglik;
  for (const TraceEntry& entry : result.trace) {
    max_trace = std::max(max_trace, entry.loglik);
  }
  CHECK(result.best_loglik == max_trace);
  for (const ChainSample& sample : result.samples) {
    CHECK(sample.loglik <= result.best_loglik);
  }
}

TEST_CASE("order distribution is doubly stochastic and effects average the samples") {
  const Dataset data = two_node_ko_data();
  const ChainResult result = run_chain(data, short_config(ChainMode::kMallows, 0.6));
  REQUIRE(!result.samples.empty());
  const int p = data.node_count();
  for (int i = 0; i < p; ++i) {
    CHECK(result.order_distribution.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.order_distribution.col(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
  }
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(p, p);
  for (const ChainSample& sample : result.samples) {
    mean += sample.effects;
  }
  mean /= static_cast<double>(result.samples.size());
  CHECK((mean - result.posterior_effects).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("summarize recomputes the stored summaries") {
  const Dataset data = two_node_ko_data();
  const ChainResult result = run_chain(data, short_config(ChainMode::kMallows, 0.6));
  const ChainSummary summary = summarize(result);
  CHECK(summary.order_distribution == result.order_distribution);
  CHECK(summary.posterior_effects == result.posterior_effects);
  CHECK(summary.best_ordering == result.best_ordering);
  CHECK(summary.best_loglik == result.best_loglik);

  ChainResult empty;
  CHECK_THROWS_AS(summarize(empty), std::invalid_argument);
}

TEST_CASE("a single retained sample yields a permutation matrix") {
  const Dataset data = two_node_ko_data();
  ChainConfig config = short_config(ChainMode::kMallows, 0.6);
  config.iterations = 110;
  config.burn_in = 10;
  config.thin = 100;
  const ChainResult result = run_chain(data, config);
  REQUIRE(result.samples.size() == 1);
  const Eigen::MatrixXd& dist = result.order_distribution;
  for (int i = 0; i < dist.rows(); ++i) {
    for (int q = 0; q < dist.cols(); ++q) {
      const bool is_there = result.samples[0].ordering.node_at(q) == i;
      CHECK(dist(i, q) == (is_there ? 1.0 : 0.0));
    }
  }
  CHECK(result.posterior_effects == result.samples[0].effects);
}

TEST_CASE("a dataset with every node always intervened cannot be scored") {
  Dataset data;
  data.values.resize(2, 2);
  data.values.setZero();
  data.interventions.assign(2, Intervention({0, 1}, Eigen::VectorXd::Zero(2)));
  CHECK_THROWS_AS(run_chain(data, short_config(ChainMode::kMallows, 0.6)), std::runtime_error);
}
