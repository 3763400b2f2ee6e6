#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "causalmcmc/harness.hpp"
#include "causalmcmc/likelihood.hpp"
#include "causalmcmc/mallows.hpp"
#include "causalmcmc/mcmc.hpp"
#include "causalmcmc/metrics.hpp"
#include "causalmcmc/pinna.hpp"
#include "causalmcmc/simulator.hpp"

namespace py = pybind11;
using namespace causalmcmc;

namespace {

Dataset make_dataset(const Eigen::MatrixXd& values,
                     const std::vector<std::vector<int>>& targets,
                     const std::vector<std::vector<double>>& fixed) {
    if (targets.size() != static_cast<std::size_t>(values.rows()) || targets.size() != fixed.size())
        throw std::invalid_argument("one targets/fixed list per sample row is required");
    Dataset data;
    data.values = values;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        Eigen::VectorXd fixed_values(fixed[k].size());
        for (std::size_t t = 0; t < fixed[k].size(); ++t)
            fixed_values[static_cast<Eigen::Index>(t)] = fixed[k][t];
        data.interventions.emplace_back(targets[k], fixed_values);
    }
    data.validate();
    return data;
}

InterventionDesign make_design(const std::vector<py::dict>& entries) {
    InterventionDesign design;
    for (const py::dict& entry : entries) {
        DesignEntry e;
        e.replicates = entry["replicates"].cast<int>();
        const auto targets = entry["targets"].cast<std::vector<int>>();
        const auto values = entry["values"].cast<std::vector<double>>();
        Eigen::VectorXd fixed(values.size());
        for (std::size_t t = 0; t < values.size(); ++t)
            fixed[static_cast<Eigen::Index>(t)] = values[t];
        e.intervention = Intervention(targets, fixed);
        design.experiments.push_back(std::move(e));
    }
    return design;
}

ChainConfig make_chain_config(int iterations, int burn_in, int thin, std::uint64_t seed,
                              const std::string& mode, std::optional<double> eta,
                              std::optional<std::vector<double>> eta_grid, int trial_iterations) {
    ChainConfig config;
    config.iterations = iterations;
    config.burn_in = burn_in;
    config.thin = thin;
    config.seed = seed;
    config.mode = mode == "uniform" ? ChainMode::kUniform : ChainMode::kMallows;
    if (mode != "uniform" && mode != "mallows")
        throw std::invalid_argument("mode must be 'mallows' or 'uniform'");
    config.eta = eta;
    if (eta_grid) config.eta_grid = *eta_grid;
    config.trial_iterations = trial_iterations;
    return config;
}

}  // namespace

PYBIND11_MODULE(_causalmcmc, m) {
    m.doc() = "Causal gene-network effect estimation: simulator, MCMC over node "
              "orderings, knock-out deviation baseline, and evaluation metrics.";

    m.def("standin_dag", []() {
        const WeightedDag& dag = standin_dag();
        std::vector<std::tuple<int, int, double>> edges;
        for (const auto& [edge, weight] : dag.weights())
            edges.emplace_back(edge.first, edge.second, weight);
        py::dict out;
        out["p"] = dag.node_count();
        out["edges"] = edges;
        return out;
    }, "The frozen 10-node, 21-edge benchmark structure (0-based node ids).");

    m.def("builtin_design", [](const std::string& name, int p) {
        const InterventionDesign design = builtin_design(builtin_design_from_name(name), p);
        std::vector<py::dict> entries;
        for (const DesignEntry& e : design.experiments) {
            py::dict entry;
            entry["replicates"] = e.replicates;
            entry["targets"] = e.intervention.targets;
            std::vector<double> values(e.intervention.values.data(),
                                       e.intervention.values.data() + e.intervention.values.size());
            entry["values"] = values;
            entries.push_back(entry);
        }
        return entries;
    }, py::arg("name"), py::arg("p"),
       "Built-in intervention design (obs, mixed, partial, multiko) as a list of "
       "{replicates, targets, values} dicts with 0-based targets.");

    m.def("simulate", [](int p, const std::vector<std::pair<int, int>>& edges, double sigma,
                         const std::vector<py::dict>& design, std::uint64_t seed) {
        const SimulationModel model = sample_parameters(p, edges, sigma, seed);
        const Dataset data = simulate(model.params, model.order, make_design(design), seed);
        py::dict out;
        out["values"] = data.values;
        std::vector<std::vector<int>> targets;
        std::vector<std::vector<double>> fixed;
        for (const Intervention& iv : data.interventions) {
            targets.push_back(iv.targets);
            fixed.emplace_back(iv.values.data(), iv.values.data() + iv.values.size());
        }
        out["targets"] = targets;
        out["fixed"] = fixed;
        out["true_effects"] = total_effects(model.params, model.order).values;
        out["order"] = model.order.perm();
        return out;
    }, py::arg("p"), py::arg("edges"), py::arg("sigma"), py::arg("design"), py::arg("seed"),
       "Draw model parameters for the edge structure and simulate the design. "
       "Returns values, per-sample targets/fixed values, the true total-effect "
       "matrix, and the generating causal order.");

    m.def("profile_loglik", [](const Eigen::MatrixXd& values,
                               const std::vector<std::vector<int>>& targets,
                               const std::vector<std::vector<double>>& fixed,
                               const std::vector<int>& order) {
        return profile_loglik(make_dataset(values, targets, fixed), NodeOrdering(order));
    }, py::arg("values"), py::arg("targets"), py::arg("fixed"), py::arg("order"));

    m.def("fit_mle", [](const Eigen::MatrixXd& values,
                        const std::vector<std::vector<int>>& targets,
                        const std::vector<std::vector<double>>& fixed,
                        const std::vector<int>& order) {
        const NodeOrdering ord(order);
        const FitResult fit = fit_mle(make_dataset(values, targets, fixed), ord);
        py::dict out;
        out["m"] = fit.params.m;
        out["sigma"] = fit.params.sigma;
        out["weights"] = fit.params.weights;
        out["loglik"] = fit.loglik;
        out["effects"] = total_effects(fit.params, ord).values;
        return out;
    }, py::arg("values"), py::arg("targets"), py::arg("fixed"), py::arg("order"),
       "Closed-form MLE for a fixed causal ordering; weights are in ordering "
       "coordinates, effects in original labels.");

    m.def("run_chain", [](const Eigen::MatrixXd& values,
                          const std::vector<std::vector<int>>& targets,
                          const std::vector<std::vector<double>>& fixed, int iterations,
                          int burn_in, int thin, std::uint64_t seed, const std::string& mode,
                          std::optional<double> eta, std::optional<std::vector<double>> eta_grid,
                          int trial_iterations) {
        const ChainConfig config = make_chain_config(iterations, burn_in, thin, seed, mode, eta,
                                                     std::move(eta_grid), trial_iterations);
        const ChainResult result = run_chain(make_dataset(values, targets, fixed), config);
        py::dict out;
        out["posterior_effects"] = result.posterior_effects;
        out["best_effects"] = result.best_effects;
        out["order_distribution"] = result.order_distribution;
        out["acceptance_rate"] = result.acceptance_rate;
        out["best_ordering"] = result.best_ordering.perm();
        out["best_loglik"] = result.best_loglik;
        out["retained_samples"] = result.samples.size();
        if (result.chosen_eta)
            out["chosen_eta"] = *result.chosen_eta;
        else
            out["chosen_eta"] = py::none();
        return out;
    }, py::arg("values"), py::arg("targets"), py::arg("fixed"), py::arg("iterations") = 50000,
       py::arg("burn_in") = 5000, py::arg("thin") = 50, py::arg("seed") = 0,
       py::arg("mode") = "mallows", py::arg("eta") = py::none(),
       py::arg("eta_grid") = py::none(), py::arg("trial_iterations") = 1000,
       "Metropolis-Hastings over causal orderings; eta=None tunes on the grid.");

    m.def("pinna_scores", [](const Eigen::MatrixXd& values,
                             const std::vector<std::vector<int>>& targets,
                             const std::vector<std::vector<double>>& fixed) {
        const DeviationMatrices scores = pinna_scores(make_dataset(values, targets, fixed));
        py::dict out;
        out["simple"] = scores.simple;
        out["zscore"] = scores.zscore;
        out["missing_knockouts"] = scores.missing_knockouts;
        out["zero_variance_genes"] = scores.zero_variance_genes;
        return out;
    }, py::arg("values"), py::arg("targets"), py::arg("fixed"),
       "Knock-out deviation matrices (simple and z-score).");

    m.def("evaluate", [](const Eigen::MatrixXd& estimated, const Eigen::MatrixXd& truth,
                         double zero_tol) {
        const EvaluationReport report = evaluate(estimated, truth, zero_tol);
        py::dict out;
        out["auroc"] = report.auroc;
        out["auprc"] = report.auprc;
        out["spearman"] = report.spearman;
        out["mse"] = report.mse;
        out["n_pairs"] = report.n_pairs;
        out["degenerate_reason"] = report.degenerate_reason;
        return out;
    }, py::arg("estimated"), py::arg("truth"), py::arg("zero_tol") = kZeroTol,
       "AUROC/AUPRC/Spearman/MSE over the off-diagonal effect pairs.");

    m.def("mallows_sample", [](const std::vector<int>& reference, double eta, std::uint64_t seed) {
        return mallows_sample(MallowsParams::from_eta(eta, NodeOrdering(reference)), seed).perm();
    }, py::arg("reference"), py::arg("eta"), py::arg("seed"));

    m.def("mallows_log_density", [](const std::vector<int>& ordering,
                                    const std::vector<int>& reference, double eta) {
        return mallows_log_density(NodeOrdering(ordering),
                                   MallowsParams::from_eta(eta, NodeOrdering(reference)));
    }, py::arg("ordering"), py::arg("reference"), py::arg("eta"));

    m.def("kendall_distance", [](const std::vector<int>& a, const std::vector<int>& b) {
        return kendall_distance(NodeOrdering(a), NodeOrdering(b));
    }, py::arg("a"), py::arg("b"));
}
