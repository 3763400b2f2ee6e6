#include "causalmcmc/pinna.hpp"

#include <cmath>
#include <stdexcept>

namespace causalmcmc {

namespace {

// Row indices of wild-type samples and, per gene, of its single knock-outs.
// Samples intervening on two or more genes are ignored.
struct SampleGroups {
    std::vector<int> wild_types;
    std::vector<std::vector<int>> single_kos;
};

SampleGroups group_samples(const Dataset& data) {
    SampleGroups groups;
    groups.single_kos.resize(data.node_count());
    for (int k = 0; k < data.sample_count(); ++k) {
        const auto& targets = data.interventions[k].targets;
        if (targets.empty()) {
            groups.wild_types.push_back(k);
        } else if (targets.size() == 1) {
            groups.single_kos[targets[0]].push_back(k);
        }
    }
    return groups;
}

Eigen::VectorXd row_mean(const Eigen::MatrixXd& values, const std::vector<int>& rows) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(values.cols());
    for (int k : rows) mean += values.row(k).transpose();
    return mean / static_cast<double>(rows.size());
}

}  // namespace

DeviationMatrices pinna_scores(const Dataset& data) {
    data.validate();
    const int p = data.node_count();
    const SampleGroups groups = group_samples(data);
    if (groups.wild_types.empty())
        throw std::invalid_argument("pinna_scores: no wild-type samples");
    bool any_ko = false;
    for (const auto& rows : groups.single_kos) any_ko = any_ko || !rows.empty();
    if (!any_ko) throw std::invalid_argument("pinna_scores: no single-knock-out samples");

    Eigen::VectorXd wt_mean = row_mean(data.values, groups.wild_types);
    Eigen::VectorXd wt_sd = Eigen::VectorXd::Zero(p);
    for (int k : groups.wild_types) {
        const Eigen::VectorXd dev = data.values.row(k).transpose() - wt_mean;
        wt_sd += dev.cwiseProduct(dev);
    }
    wt_sd = (wt_sd / static_cast<double>(groups.wild_types.size())).cwiseSqrt();
    // A constant column has SD exactly 0 (summation noise must not hide the
    // degenerate case the sentinel semantics depend on).
    for (int j = 0; j < p; ++j) {
        bool constant = true;
        for (int k : groups.wild_types)
            constant = constant && data.values(k, j) == data.values(groups.wild_types[0], j);
        if (constant) {
            wt_sd[j] = 0.0;
            wt_mean[j] = data.values(groups.wild_types[0], j);
        }
    }

    DeviationMatrices result;
    result.simple = Eigen::MatrixXd::Zero(p, p);
    result.zscore = Eigen::MatrixXd::Zero(p, p);
    for (int j = 0; j < p; ++j)
        if (wt_sd[j] == 0.0) result.zero_variance_genes.push_back(j);

    for (int i = 0; i < p; ++i) {
        if (groups.single_kos[i].empty()) {
            result.missing_knockouts.push_back(i);
            continue;
        }
        const Eigen::VectorXd ko_mean = row_mean(data.values, groups.single_kos[i]);
        for (int j = 0; j < p; ++j) {
            if (j == i) continue;
            const double deviation = wt_mean[j] - ko_mean[j];
            result.simple(i, j) = deviation;
            if (wt_sd[j] > 0.0) {
                result.zscore(i, j) = deviation / wt_sd[j];
            } else if (deviation != 0.0) {
                result.zscore(i, j) = std::copysign(kZscoreSentinel, deviation);
            }
        }
    }
    return result;
}

DesignCheck pinna_requires_full_design(const Dataset& data) {
    const SampleGroups groups = group_samples(data);
    DesignCheck check;
    for (int i = 0; i < data.node_count(); ++i)
        if (groups.single_kos[i].empty()) check.missing_genes.push_back(i);
    check.full = check.missing_genes.empty() && data.node_count() > 0;
    return check;
}

}  // namespace causalmcmc
