#ifndef CAUSALMCMC_METRICS_HPP_
#define CAUSALMCMC_METRICS_HPP_

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace causalmcmc {

// True effects smaller than this in magnitude count as structural zeros when
// labelling pairs; path effects are products of weights bounded away from 0,
// so positives are well separated.
inline constexpr double kZeroTol = 1e-12;

// Scores of one estimated effect matrix against the truth, over every ordered
// off-diagonal pair. AUROC/AUPRC rank pairs by |estimated|; Spearman and MSE
// use the signed values. When the truth has only one label class, AUROC and
// AUPRC are NaN and degenerate_reason says why.
struct EvaluationReport {
    double auroc = 0.0;
    double auprc = 0.0;
    double spearman = 0.0;
    double mse = 0.0;
    int n_pairs = 0;
    std::string degenerate_reason;
    bool spearman_constant = false;  // a constant rank vector forced spearman to 0
};

EvaluationReport evaluate(const Eigen::MatrixXd& estimated, const Eigen::MatrixXd& truth,
                          double zero_tol = kZeroTol);

struct CurvePoint {
    double x;  // ROC: false-positive rate; PR: recall
    double y;  // ROC: true-positive rate; PR: precision
};

struct Curves {
    std::vector<CurvePoint> roc;
    std::vector<CurvePoint> pr;
};

// Threshold sweep over the distinct |estimated| values; the trapezoidal area
// of roc equals evaluate().auroc and the step integral of pr equals
// evaluate().auprc. Throws std::invalid_argument when only one label class is
// present.
Curves roc_pr_curves(const Eigen::MatrixXd& estimated, const Eigen::MatrixXd& truth,
                     double zero_tol = kZeroTol);

// Average ranks (1-based, ties averaged) of a vector; exposed for tests.
std::vector<double> average_ranks(const std::vector<double>& values);

}  // namespace causalmcmc

#endif  // CAUSALMCMC_METRICS_HPP_
