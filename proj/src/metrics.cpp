#include "causalmcmc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace causalmcmc {

namespace {

struct PairData {
    std::vector<double> scores;     // |estimated|
    std::vector<double> estimated;  // signed
    std::vector<double> truth;      // signed
    std::vector<bool> positive;
    long long n_pos = 0;
    long long n_neg = 0;
};

PairData collect_pairs(const Eigen::MatrixXd& estimated, const Eigen::MatrixXd& truth,
                       double zero_tol) {
    if (estimated.rows() != truth.rows() || estimated.cols() != truth.cols() ||
        estimated.rows() != estimated.cols())
        throw std::invalid_argument("evaluate: matrices must be square and of equal size");
    const int p = static_cast<int>(truth.rows());
    PairData pairs;
    pairs.scores.reserve(static_cast<std::size_t>(p) * (p - 1));
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            if (i == j) continue;
            pairs.scores.push_back(std::abs(estimated(i, j)));
            pairs.estimated.push_back(estimated(i, j));
            pairs.truth.push_back(truth(i, j));
            const bool pos = std::abs(truth(i, j)) > zero_tol;
            pairs.positive.push_back(pos);
            (pos ? pairs.n_pos : pairs.n_neg) += 1;
        }
    }
    return pairs;
}

// Tie-corrected Mann-Whitney statistic; equals the trapezoidal ROC area.
double mann_whitney_auc(const PairData& pairs) {
    const std::vector<double> ranks = average_ranks(pairs.scores);
    double positive_rank_sum = 0.0;
    for (std::size_t i = 0; i < ranks.size(); ++i)
        if (pairs.positive[i]) positive_rank_sum += ranks[i];
    const double n_pos = static_cast<double>(pairs.n_pos);
    const double n_neg = static_cast<double>(pairs.n_neg);
    return (positive_rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

// Indices grouped by tied score, highest score first.
std::vector<std::vector<std::size_t>> score_groups(const std::vector<double>& scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&scores](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t idx : order) {
        if (groups.empty() || scores[groups.back().front()] != scores[idx]) groups.emplace_back();
        groups.back().push_back(idx);
    }
    return groups;
}

// Step integral of precision over recall, processing tied scores as one block.
double step_auprc(const PairData& pairs) {
    double auprc = 0.0;
    long long tp = 0, fp = 0;
    double prev_recall = 0.0;
    for (const auto& group : score_groups(pairs.scores)) {
        for (std::size_t idx : group) (pairs.positive[idx] ? tp : fp) += 1;
        const double recall = static_cast<double>(tp) / static_cast<double>(pairs.n_pos);
        const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
        auprc += (recall - prev_recall) * precision;
        prev_recall = recall;
    }
    return auprc;
}

double spearman_correlation(const PairData& pairs, bool* constant_flag) {
    const std::vector<double> rx = average_ranks(pairs.estimated);
    const std::vector<double> ry = average_ranks(pairs.truth);
    const double n = static_cast<double>(rx.size());
    const double mean = (n + 1.0) / 2.0;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxx += (rx[i] - mean) * (rx[i] - mean);
        syy += (ry[i] - mean) * (ry[i] - mean);
        sxy += (rx[i] - mean) * (ry[i] - mean);
    }
    if (sxx == 0.0 || syy == 0.0) {
        *constant_flag = true;
        return 0.0;
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

std::vector<double> average_ranks(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&values](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size(), 0.0);
    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t stop = start;
        while (stop + 1 < order.size() && values[order[stop + 1]] == values[order[start]]) ++stop;
        const double shared = 0.5 * static_cast<double>(start + stop) + 1.0;
        for (std::size_t q = start; q <= stop; ++q) ranks[order[q]] = shared;
        start = stop + 1;
    }
    return ranks;
}

EvaluationReport evaluate(const Eigen::MatrixXd& estimated, const Eigen::MatrixXd& truth,
                          double zero_tol) {
    const PairData pairs = collect_pairs(estimated, truth, zero_tol);
    EvaluationReport report;
    report.n_pairs = static_cast<int>(pairs.scores.size());
    if (report.n_pairs == 0) throw std::invalid_argument("evaluate: need at least two nodes");

    double sq = 0.0;
    for (std::size_t i = 0; i < pairs.truth.size(); ++i) {
        const double diff = pairs.estimated[i] - pairs.truth[i];
        sq += diff * diff;
    }
    report.mse = sq / static_cast<double>(report.n_pairs);
    report.spearman = spearman_correlation(pairs, &report.spearman_constant);

    if (pairs.n_pos == 0 || pairs.n_neg == 0) {
        report.auroc = std::numeric_limits<double>::quiet_NaN();
        report.auprc = std::numeric_limits<double>::quiet_NaN();
        report.degenerate_reason = pairs.n_pos == 0 ? "all truth labels are negative"
                                                    : "all truth labels are positive";
        return report;
    }
    report.auroc = mann_whitney_auc(pairs);
    report.auprc = step_auprc(pairs);
    return report;
}

Curves roc_pr_curves(const Eigen::MatrixXd& estimated, const Eigen::MatrixXd& truth,
                     double zero_tol) {
    const PairData pairs = collect_pairs(estimated, truth, zero_tol);
    if (pairs.n_pos == 0 || pairs.n_neg == 0)
        throw std::invalid_argument("roc_pr_curves: need both label classes");

    Curves curves;
    curves.roc.push_back({0.0, 0.0});
    long long tp = 0, fp = 0;
    bool first_group = true;
    for (const auto& group : score_groups(pairs.scores)) {
        for (std::size_t idx : group) (pairs.positive[idx] ? tp : fp) += 1;
        const double tpr = static_cast<double>(tp) / static_cast<double>(pairs.n_pos);
        const double fpr = static_cast<double>(fp) / static_cast<double>(pairs.n_neg);
        const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
        if (first_group) {
            curves.pr.push_back({0.0, precision});
            first_group = false;
        }
        curves.roc.push_back({fpr, tpr});
        curves.pr.push_back({tpr, precision});
    }
    return curves;
}

}  // namespace causalmcmc
