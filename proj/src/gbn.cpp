#include "causalmcmc/gbn.hpp"

#include <stdexcept>

namespace causalmcmc {

namespace {

// Solves (I - W) X = I for strictly upper triangular W by back-substitution.
Eigen::MatrixXd effect_matrix_in_ordering(const Eigen::MatrixXd& weights) {
    const int p = static_cast<int>(weights.rows());
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(p, p) - weights;
    return system.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
}

}  // namespace

void GbnParams::validate() const {
    const int p = node_count();
    if (sigma.size() != p || weights.rows() != p || weights.cols() != p)
        throw std::invalid_argument("GbnParams: inconsistent dimensions");
    for (int j = 0; j < p; ++j) {
        if (!(sigma[j] >= 0.0) || !std::isfinite(sigma[j]))
            throw std::invalid_argument("GbnParams: sigma must be finite and non-negative");
    }
    for (int a = 0; a < p; ++a)
        for (int b = 0; b <= a; ++b)
            if (weights(a, b) != 0.0)
                throw std::invalid_argument("GbnParams: weights must be strictly upper triangular");
}

GbnParams params_in_ordering(const WeightedDag& dag, const Eigen::VectorXd& means_by_node,
                             const Eigen::VectorXd& sigmas_by_node, const NodeOrdering& ord) {
    const int p = dag.node_count();
    if (means_by_node.size() != p || sigmas_by_node.size() != p || ord.size() != p)
        throw std::invalid_argument("params_in_ordering: inconsistent dimensions");
    if (!validate_ordering(dag, ord))
        throw std::invalid_argument("params_in_ordering: ordering is not causal for the DAG");
    GbnParams params;
    params.m.resize(p);
    params.sigma.resize(p);
    params.weights = Eigen::MatrixXd::Zero(p, p);
    for (int q = 0; q < p; ++q) {
        const int node = ord.node_at(q);
        params.m[q] = means_by_node[node];
        params.sigma[q] = sigmas_by_node[node];
    }
    for (const auto& [edge, w] : dag.weights())
        params.weights(ord.position_of(edge.first), ord.position_of(edge.second)) = w;
    return params;
}

TotalEffectMatrix total_effects(const GbnParams& params, const NodeOrdering& ord) {
    params.validate();
    const int p = params.node_count();
    if (ord.size() != p) throw std::invalid_argument("total_effects: ordering length mismatch");
    const Eigen::MatrixXd effects_ord = effect_matrix_in_ordering(params.weights);
    TotalEffectMatrix out;
    out.values.resize(p, p);
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
            out.values(ord.node_at(a), ord.node_at(b)) = effects_ord(a, b);
    return out;
}

GaussianMoments intervention_moments(const GbnParams& params, const NodeOrdering& ord,
                                     const std::vector<int>& targets,
                                     const Eigen::VectorXd& fixed_values) {
    params.validate();
    const int p = params.node_count();
    if (ord.size() != p) throw std::invalid_argument("intervention_moments: ordering length mismatch");
    if (static_cast<int>(targets.size()) != fixed_values.size())
        throw std::invalid_argument("intervention_moments: targets and fixed_values misaligned");

    std::vector<bool> intervened(p, false);
    Eigen::VectorXd nu(p);
    for (int q = 0; q < p; ++q) nu[q] = params.m[q];
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const int node = targets[t];
        if (node < 0 || node >= p)
            throw std::invalid_argument("intervention_moments: target index out of range");
        const int q = ord.position_of(node);
        intervened[q] = true;
        nu[q] = fixed_values[static_cast<int>(t)];
    }

    // Severing incoming edges of the targets zeroes their weight columns.
    Eigen::MatrixXd truncated = params.weights;
    for (int q = 0; q < p; ++q)
        if (intervened[q]) truncated.col(q).setZero();
    const Eigen::MatrixXd effects = effect_matrix_in_ordering(truncated);

    const Eigen::VectorXd mean_ord = effects.transpose() * nu;
    Eigen::VectorXd noise_sd(p);
    for (int q = 0; q < p; ++q) noise_sd[q] = intervened[q] ? 0.0 : params.sigma[q];
    // Sum_{j not in J} sigma_j^2 L^T D_j L written as B^T B keeps the result
    // exactly symmetric and positive semidefinite.
    const Eigen::MatrixXd scaled = noise_sd.asDiagonal() * effects;
    const Eigen::MatrixXd cov_ord = scaled.transpose() * scaled;

    GaussianMoments out;
    out.mean.resize(p);
    out.covariance.resize(p, p);
    for (int a = 0; a < p; ++a) {
        out.mean[ord.node_at(a)] = mean_ord[a];
        for (int b = 0; b < p; ++b) out.covariance(ord.node_at(a), ord.node_at(b)) = cov_ord(a, b);
    }
    return out;
}

}  // namespace causalmcmc
