#ifndef CAUSALMCMC_DATASET_HPP_
#define CAUSALMCMC_DATASET_HPP_

#include <Eigen/Dense>
#include <vector>

namespace causalmcmc {

// One do() assignment: clamp each target node to the aligned fixed value.
// Targets use 0-based original node labels, kept sorted and unique.
struct Intervention {
    std::vector<int> targets;
    Eigen::VectorXd values;

    Intervention() = default;
    Intervention(std::vector<int> targets_in, Eigen::VectorXd values_in);

    bool is_wild_type() const { return targets.empty(); }
    bool contains(int node) const;
};

struct DesignEntry {
    int replicates = 0;
    Intervention intervention;
};

// Ordered list of experiments; an empty target set denotes wild-type rows.
struct InterventionDesign {
    std::vector<DesignEntry> experiments;

    int total_samples() const;
    void validate(int node_count) const;
};

// N samples of p genes with the per-sample intervention bookkeeping. Row k of
// values holds sample x^k in original node labels; for every target j of
// interventions[k], values(k, j) equals the clamped value exactly.
struct Dataset {
    Eigen::MatrixXd values;
    std::vector<Intervention> interventions;

    int sample_count() const { return static_cast<int>(values.rows()); }
    int node_count() const { return static_cast<int>(values.cols()); }

    bool intervened(int sample, int node) const { return interventions[sample].contains(node); }

    // K_j: indices of the samples in which node j was not intervened.
    std::vector<int> samples_observing(int node) const;

    bool has_any_intervention() const;

    // Checks dimensions, target ranges, and the clamping invariant.
    void validate() const;
};

}  // namespace causalmcmc

#endif  // CAUSALMCMC_DATASET_HPP_
