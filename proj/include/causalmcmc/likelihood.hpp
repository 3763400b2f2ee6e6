#ifndef CAUSALMCMC_LIKELIHOOD_HPP_
#define CAUSALMCMC_LIKELIHOOD_HPP_

#include <Eigen/Dense>
#include <set>
#include <utility>
#include <vector>

#include "causalmcmc/dag.hpp"
#include "causalmcmc/dataset.hpp"
#include "causalmcmc/gbn.hpp"

namespace causalmcmc {

// Candidate edge set for estimation. The sampler always fits the saturated
// model: every pair ordered (i before j) is a candidate edge, which is what
// makes the observational likelihood invariant to the ordering.
class Structure {
  public:
    static Structure saturated() { return Structure(true, {}); }
    static Structure from_edges(std::vector<std::pair<int, int>> edges) {
        return Structure(false, std::move(edges));
    }

    bool is_saturated() const { return saturated_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  private:
    Structure(bool saturated, std::vector<std::pair<int, int>> edges)
        : saturated_(saturated), edges_(std::move(edges)) {}
    bool saturated_;
    std::vector<std::pair<int, int>> edges_;  // original labels
};

// Per-node centered data: for node j, rows K_j of the sample matrix centered
// by the K_j column means (y^{k,j}). Original label coordinates.
struct CenteredData {
    std::vector<Eigen::MatrixXd> centered;       // [node] -> N_j x p
    std::vector<std::vector<int>> observing;     // [node] -> K_j sample indices
    std::vector<Eigen::VectorXd> column_means;   // [node] -> K_j column means
};

CenteredData center_by_node(const Dataset& data);

// Mixture log-likelihood: every sample contributes one Gaussian regression
// term per non-intervened coordinate. Throws std::domain_error when any
// sigma_j <= 0. A node intervened in every sample contributes nothing.
double log_likelihood(const GbnParams& params, const Dataset& data, const NodeOrdering& ord);

struct FitResult {
    GbnParams params;
    double loglik = 0.0;
    // Edges whose coefficient was not identifiable (rank-deficient per-node
    // system; minimum-norm solution reported). Original labels.
    std::set<std::pair<int, int>> degenerate_edges;
    // Nodes intervened in every sample: parameters fixed to (0, 1, zero row).
    std::vector<int> unidentifiable_nodes;
    // Nodes whose residual SD was raised to the numerical floor.
    std::vector<int> floored_sigmas;
};

// Closed-form maximum likelihood estimation of (m, sigma, w) for a fixed
// ordering; the per-node subproblems are independent least squares on the
// centered data. sigma uses the 1/N_j normalization.
FitResult fit_mle(const Dataset& data, const NodeOrdering& ord,
                  const Structure& structure = Structure::saturated());

// max_theta log-likelihood for the ordering; the target density evaluated by
// the sampler.
double profile_loglik(const Dataset& data, const NodeOrdering& ord);

// Gradient of the mixture log-likelihood in ordering coordinates. weights is
// laid out like GbnParams::weights; entries on or below the diagonal are 0.
struct Gradient {
    Eigen::VectorXd m;
    Eigen::VectorXd sigma;
    Eigen::MatrixXd weights;
};

Gradient analytic_gradient(const GbnParams& params, const Dataset& data, const NodeOrdering& ord);

// Numerical floor applied to fitted residual SDs so the log-likelihood stays
// finite when residuals vanish.
inline constexpr double kSigmaFloor = 1e-8;

}  // namespace causalmcmc

#endif  // CAUSALMCMC_LIKELIHOOD_HPP_
