#ifndef CAUSALMCMC_MALLOWS_HPP_
#define CAUSALMCMC_MALLOWS_HPP_

#include <cstdint>

#include "causalmcmc/dag.hpp"
#include "causalmcmc/seeding.hpp"

namespace causalmcmc {

// Mallows kernel over orderings: P(candidate | reference) = phi^d / Z with d
// the Kendall distance. Parameterized by the temperature eta through
// phi = exp(-1/eta), so small eta concentrates mass near the reference and
// phi = 1 (eta = +inf) is uniform over all permutations.
struct MallowsParams {
    double eta;
    double phi;
    double log_phi;
    NodeOrdering reference;

    static MallowsParams from_eta(double eta, NodeOrdering reference);
    static MallowsParams from_phi(double phi, NodeOrdering reference);
};

// Number of pairwise ranking disagreements, counted in O(p log p) by merge
// sort inversion counting. Symmetric; 0 iff a == b; at most p(p-1)/2.
int kendall_distance(const NodeOrdering& a, const NodeOrdering& b);

// log Z for the given size: Z = prod_{j=1}^{p} sum_{r=0}^{j-1} phi^r.
double mallows_log_normalizer(int p, double phi);

double mallows_log_density(const NodeOrdering& candidate, const MallowsParams& params);

// Repeated insertion sampling: the j-th reference item is inserted at
// displacement r from the end of the partial list with probability
// proportional to phi^r, which draws exactly from the Mallows density.
NodeOrdering mallows_sample(const MallowsParams& params, Rng& rng);
NodeOrdering mallows_sample(const MallowsParams& params, std::uint64_t seed);

}  // namespace causalmcmc

#endif  // CAUSALMCMC_MALLOWS_HPP_
