#ifndef CAUSALMCMC_PINNA_HPP_
#define CAUSALMCMC_PINNA_HPP_

#include <Eigen/Dense>
#include <vector>

#include "causalmcmc/dataset.hpp"

namespace causalmcmc {

// Stand-in z-score magnitude when a gene has zero wild-type variance, so the
// induced ranking stays deterministic.
inline constexpr double kZscoreSentinel = 1e12;

// Knock-out deviation matrices. Entry (i, j) scores the effect of gene i on
// gene j; rows of genes without a single knock-out stay at 0 and are flagged.
struct DeviationMatrices {
    Eigen::MatrixXd simple;
    Eigen::MatrixXd zscore;
    std::vector<int> missing_knockouts;   // genes with no single-knock-out sample
    std::vector<int> zero_variance_genes; // genes with zero wild-type variance
};

// simple(i, j) = wild-type mean of gene j minus its mean under the knock-out
// of gene i; zscore(i, j) divides that by the wild-type standard deviation of
// gene j. Only wild-type and single-knock-out samples are used; diagonals are
// zero. Throws std::invalid_argument when the data contain no wild-type or no
// single-knock-out sample.
DeviationMatrices pinna_scores(const Dataset& data);

struct DesignCheck {
    bool full = false;
    std::vector<int> missing_genes; // genes lacking a single-knock-out sample
};

// True iff every gene has at least one single-knock-out sample.
DesignCheck pinna_requires_full_design(const Dataset& data);

}  // namespace causalmcmc

#endif  // CAUSALMCMC_PINNA_HPP_
