#include "causalmcmc/simulator.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "causalmcmc/seeding.hpp"

namespace causalmcmc {

SimulationModel sample_parameters(int node_count, const std::vector<std::pair<int, int>>& structure,
                                  double sigma, std::uint64_t seed) {
    if (!(sigma >= 0.0)) throw std::invalid_argument("sample_parameters: sigma must be >= 0");
    Rng rng(derive_seed(seed, {tag("params")}));
    // Draw in sorted edge order so the assignment is independent of the
    // caller's edge ordering.
    std::vector<std::pair<int, int>> sorted_edges = structure;
    std::sort(sorted_edges.begin(), sorted_edges.end());
    std::vector<std::tuple<int, int, double>> weighted;
    weighted.reserve(sorted_edges.size());
    for (const auto& [i, j] : sorted_edges) {
        const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        const double magnitude = 0.25 + 0.75 * rng.uniform();
        weighted.emplace_back(i, j, sign * magnitude);
    }
    WeightedDag dag(node_count, weighted);  // throws on cycles
    NodeOrdering ord(dag.topological_order());
    const Eigen::VectorXd means = Eigen::VectorXd::Constant(node_count, 0.5);
    const Eigen::VectorXd sigmas = Eigen::VectorXd::Constant(node_count, sigma);
    GbnParams params = params_in_ordering(dag, means, sigmas, ord);
    return SimulationModel{std::move(dag), std::move(ord), std::move(params)};
}

Dataset simulate(const GbnParams& params, const NodeOrdering& ord, const InterventionDesign& design,
                 std::uint64_t seed) {
    params.validate();
    const int p = params.node_count();
    if (ord.size() != p) throw std::invalid_argument("simulate: ordering length mismatch");
    design.validate(p);

    Dataset data;
    data.values.resize(design.total_samples(), p);
    data.interventions.reserve(design.total_samples());

    int row = 0;
    for (std::size_t entry = 0; entry < design.experiments.size(); ++entry) {
        const auto& experiment = design.experiments[entry];
        Rng rng(derive_seed(seed, {tag("simulate"), static_cast<std::uint64_t>(entry)}));
        std::vector<bool> clamped(p, false);
        Eigen::VectorXd clamp_value(p);
        for (std::size_t t = 0; t < experiment.intervention.targets.size(); ++t) {
            clamped[experiment.intervention.targets[t]] = true;
            clamp_value[experiment.intervention.targets[t]] =
                experiment.intervention.values[static_cast<int>(t)];
        }
        for (int r = 0; r < experiment.replicates; ++r) {
            for (int q = 0; q < p; ++q) {
                const int node = ord.node_at(q);
                if (clamped[node]) {
                    data.values(row, node) = clamp_value[node];
                    continue;
                }
                double value = params.m[q];
                for (int a = 0; a < q; ++a)
                    value += params.weights(a, q) * data.values(row, ord.node_at(a));
                value += params.sigma[q] * rng.normal();
                data.values(row, node) = value;
            }
            data.interventions.push_back(experiment.intervention);
            ++row;
        }
    }
    data.validate();
    return data;
}

InterventionDesign builtin_design(BuiltinDesign which, int node_count) {
    const auto knockout = [](std::initializer_list<int> genes) {
        std::vector<int> targets(genes);
        return Intervention(std::move(targets), Eigen::VectorXd::Zero(static_cast<int>(genes.size())));
    };
    const auto require = [&](int min_p, const char* label) {
        if (node_count < min_p)
            throw std::invalid_argument(std::string("builtin_design: design '") + label +
                                        "' requires at least " + std::to_string(min_p) + " nodes");
    };

    InterventionDesign design;
    switch (which) {
        case BuiltinDesign::kObservational:
            require(1, "obs");
            design.experiments.push_back({20, Intervention{}});
            break;
        case BuiltinDesign::kMixed:
            require(1, "mixed");
            design.experiments.push_back({10, Intervention{}});
            for (int g = 0; g < node_count; ++g) design.experiments.push_back({1, knockout({g})});
            break;
        case BuiltinDesign::kPartialKnockOut:
            require(5, "partial");
            design.experiments.push_back({15, Intervention{}});
            for (int g = 0; g < 5; ++g) design.experiments.push_back({1, knockout({g})});
            break;
        case BuiltinDesign::kMultipleKnockOut:
            require(8, "multiko");
            design.experiments.push_back({10, Intervention{}});
            for (int g = 0; g < node_count; ++g) design.experiments.push_back({1, knockout({g})});
            for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {3, 4}, {4, 5}, {2, 7}})
                design.experiments.push_back({1, knockout({a, b})});
            break;
    }
    return design;
}

std::vector<InterventionDesign> builtin_designs(int node_count) {
    return {builtin_design(BuiltinDesign::kObservational, node_count),
            builtin_design(BuiltinDesign::kMixed, node_count),
            builtin_design(BuiltinDesign::kPartialKnockOut, node_count),
            builtin_design(BuiltinDesign::kMultipleKnockOut, node_count)};
}

BuiltinDesign builtin_design_from_name(const std::string& name) {
    if (name == "obs") return BuiltinDesign::kObservational;
    if (name == "mixed") return BuiltinDesign::kMixed;
    if (name == "partial") return BuiltinDesign::kPartialKnockOut;
    if (name == "multiko") return BuiltinDesign::kMultipleKnockOut;
    throw std::invalid_argument("unknown design name: " + name);
}

std::string builtin_design_label(BuiltinDesign which) {
    switch (which) {
        case BuiltinDesign::kObservational: return "Observation only";
        case BuiltinDesign::kMixed: return "Mixed";
        case BuiltinDesign::kPartialKnockOut: return "Partial KO";
        case BuiltinDesign::kMultipleKnockOut: return "Multiple KO";
    }
    throw std::invalid_argument("builtin_design_label: invalid design");
}

const WeightedDag& standin_dag() {
    static const WeightedDag dag(10, {
        {0, 3, -0.3078}, {0, 4, 0.8452},  {0, 5, -0.6842}, {0, 9, -0.4701}, {1, 6, 0.448},
        {1, 9, -0.7866}, {2, 3, 0.3282},  {2, 4, -0.8284}, {2, 5, 0.9167},  {2, 8, -0.6751},
        {3, 4, -0.7517}, {3, 5, -0.4275}, {3, 6, -0.9878}, {4, 5, 0.5038},  {4, 6, -0.8435},
        {4, 7, 0.5891},  {4, 8, 0.4493},  {5, 8, -0.886},  {5, 9, -0.4957}, {6, 8, -0.2555},
        {8, 9, 0.5043},
    });
    return dag;
}

}  // namespace causalmcmc
