#ifndef CAUSALMCMC_GBN_HPP_
#define CAUSALMCMC_GBN_HPP_

#include <Eigen/Dense>
#include <vector>

#include "causalmcmc/dag.hpp"

namespace causalmcmc {

// Parameters of a linear Gaussian network in ordering coordinates: position q
// of every vector refers to the q-th node of the accompanying causal ordering.
// weights(a, b) is the direct effect of the node at position a on the node at
// position b and must be strictly upper triangular (nilpotence precondition).
struct GbnParams {
    Eigen::VectorXd m;        // intercepts
    Eigen::VectorXd sigma;    // residual standard deviations, >= 0
    Eigen::MatrixXd weights;  // strictly upper triangular

    int node_count() const { return static_cast<int>(m.size()); }

    // Throws on dimension mismatch, negative sigma, or a nonzero entry on or
    // below the diagonal of weights.
    void validate() const;
};

// Total causal effects in original node labels: values(i, j) is the derivative
// of E(X_j | do(X_i = x)) in x. The diagonal is 1 by construction and is
// excluded from every downstream metric.
struct TotalEffectMatrix {
    Eigen::MatrixXd values;

    int node_count() const { return static_cast<int>(values.rows()); }
};

// Builds GbnParams for a weighted DAG under a valid causal ordering of it,
// taking per-node intercepts and residual SDs indexed by original labels.
GbnParams params_in_ordering(const WeightedDag& dag, const Eigen::VectorXd& means_by_node,
                             const Eigen::VectorXd& sigmas_by_node, const NodeOrdering& ord);

// Inverse map of the effect matrix computed from the fitted weights; the
// triangular system (I - W) X = I is solved by back-substitution and the
// result is permuted back to original node labels.
TotalEffectMatrix total_effects(const GbnParams& params, const NodeOrdering& ord);

struct GaussianMoments {
    Eigen::VectorXd mean;        // original node labels
    Eigen::MatrixXd covariance;  // original node labels, positive semidefinite
};

// Mean and covariance of the network under do(X_targets = fixed_values).
// Incoming edges of every target are severed and the target coordinates are
// deterministic: their mean equals the fixed value and their covariance rows
// and columns vanish. Targets use original node labels; an empty target set
// yields the observational moments.
GaussianMoments intervention_moments(const GbnParams& params, const NodeOrdering& ord,
                                     const std::vector<int>& targets,
                                     const Eigen::VectorXd& fixed_values);

}  // namespace causalmcmc

#endif  // CAUSALMCMC_GBN_HPP_
