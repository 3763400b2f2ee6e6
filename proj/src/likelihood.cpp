#include "causalmcmc/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace causalmcmc {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;  // log(2*pi)

Eigen::MatrixXd values_in_ordering(const Dataset& data, const NodeOrdering& ord) {
    const int n = data.sample_count();
    const int p = data.node_count();
    Eigen::MatrixXd out(n, p);
    for (int q = 0; q < p; ++q) out.col(q) = data.values.col(ord.node_at(q));
    return out;
}

// Residual matrix R(k, q) = x_q - x W e_q - m_q in ordering coordinates.
Eigen::MatrixXd residual_matrix(const GbnParams& params, const Eigen::MatrixXd& x_ord) {
    Eigen::MatrixXd residuals = x_ord - x_ord * params.weights;
    residuals.rowwise() -= params.m.transpose();
    return residuals;
}

void check_dimensions(const GbnParams& params, const Dataset& data, const NodeOrdering& ord) {
    if (params.node_count() != data.node_count() || ord.size() != data.node_count())
        throw std::invalid_argument("likelihood: dimension mismatch between params, data, and ordering");
}

// Positions of the candidate predictors of the node at position q.
std::vector<int> predictor_positions(const Structure& structure, const NodeOrdering& ord, int q) {
    std::vector<int> preds;
    if (structure.is_saturated()) {
        preds.reserve(q);
        for (int a = 0; a < q; ++a) preds.push_back(a);
    } else {
        const int j = ord.node_at(q);
        for (const auto& [src, dst] : structure.edges()) {
            if (dst != j) continue;
            const int a = ord.position_of(src);
            if (a >= q)
                throw std::invalid_argument("fit_mle: ordering is not causal for the given structure");
            preds.push_back(a);
        }
        std::sort(preds.begin(), preds.end());
    }
    return preds;
}

}  // namespace

CenteredData center_by_node(const Dataset& data) {
    data.validate();
    const int p = data.node_count();
    CenteredData out;
    out.centered.resize(p);
    out.observing.resize(p);
    out.column_means.resize(p);
    for (int j = 0; j < p; ++j) {
        out.observing[j] = data.samples_observing(j);
        const auto& rows = out.observing[j];
        Eigen::MatrixXd block(rows.size(), p);
        for (std::size_t r = 0; r < rows.size(); ++r) block.row(r) = data.values.row(rows[r]);
        Eigen::VectorXd mean = rows.empty() ? Eigen::VectorXd::Zero(p)
                                            : Eigen::VectorXd(block.colwise().mean());
        block.rowwise() -= mean.transpose();
        out.centered[j] = std::move(block);
        out.column_means[j] = std::move(mean);
    }
    return out;
}

double log_likelihood(const GbnParams& params, const Dataset& data, const NodeOrdering& ord) {
    params.validate();
    check_dimensions(params, data, ord);
    const int p = data.node_count();
    for (int q = 0; q < p; ++q)
        if (params.sigma[q] <= 0.0) throw std::domain_error("log_likelihood: sigma must be > 0");

    const Eigen::MatrixXd x_ord = values_in_ordering(data, ord);
    const Eigen::MatrixXd residuals = residual_matrix(params, x_ord);

    double loglik = 0.0;
    for (int k = 0; k < data.sample_count(); ++k) {
        for (int q = 0; q < p; ++q) {
            if (data.intervened(k, ord.node_at(q))) continue;
            const double r = residuals(k, q);
            loglik += -0.5 * kLogTwoPi - std::log(params.sigma[q]) -
                      0.5 * r * r / (params.sigma[q] * params.sigma[q]);
        }
    }
    return loglik;
}

FitResult fit_mle(const Dataset& data, const NodeOrdering& ord, const Structure& structure) {
    data.validate();
    const int p = data.node_count();
    const int n = data.sample_count();
    if (ord.size() != p) throw std::invalid_argument("fit_mle: ordering length mismatch");

    const Eigen::MatrixXd x_ord = values_in_ordering(data, ord);

    FitResult fit;
    fit.params.m = Eigen::VectorXd::Zero(p);
    fit.params.sigma = Eigen::VectorXd::Ones(p);
    fit.params.weights = Eigen::MatrixXd::Zero(p, p);

    std::vector<char> observed(n);
    for (int q = 0; q < p; ++q) {
        const int node = ord.node_at(q);
        int n_j = 0;
        for (int k = 0; k < n; ++k) {
            observed[k] = !data.intervened(k, node);
            n_j += observed[k];
        }
        if (n_j == 0) {
            fit.unidentifiable_nodes.push_back(node);
            continue;  // (m, sigma, w) stay at (0, 1, zero row)
        }

        const std::vector<int> preds = predictor_positions(structure, ord, q);
        const int q_preds = static_cast<int>(preds.size());

        // Column means over K_j for the response and the predictors.
        Eigen::VectorXd pred_mean = Eigen::VectorXd::Zero(q_preds);
        double response_mean = 0.0;
        for (int k = 0; k < n; ++k) {
            if (!observed[k]) continue;
            for (int c = 0; c < q_preds; ++c) pred_mean[c] += x_ord(k, preds[c]);
            response_mean += x_ord(k, q);
        }
        pred_mean /= n_j;
        response_mean /= n_j;

        Eigen::VectorXd coef;
        double rss = 0.0;
        if (q_preds == 0) {
            for (int k = 0; k < n; ++k) {
                if (!observed[k]) continue;
                const double d = x_ord(k, q) - response_mean;
                rss += d * d;
            }
        } else {
            Eigen::MatrixXd predictors(n_j, q_preds);
            Eigen::VectorXd response(n_j);
            int r = 0;
            for (int k = 0; k < n; ++k) {
                if (!observed[k]) continue;
                for (int c = 0; c < q_preds; ++c) predictors(r, c) = x_ord(k, preds[c]) - pred_mean[c];
                response[r] = x_ord(k, q) - response_mean;
                ++r;
            }
            Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(predictors);
            coef = cod.solve(response);  // minimum-norm least squares
            if (cod.rank() < q_preds) {
                for (int c = 0; c < q_preds; ++c)
                    fit.degenerate_edges.insert({ord.node_at(preds[c]), node});
            }
            rss = (response - predictors * coef).squaredNorm();
            for (int c = 0; c < q_preds; ++c) fit.params.weights(preds[c], q) = coef[c];
        }

        double intercept = response_mean;
        for (int c = 0; c < q_preds; ++c) intercept -= coef[c] * pred_mean[c];
        fit.params.m[q] = intercept;

        double sigma = std::sqrt(rss / n_j);
        if (sigma < kSigmaFloor) {
            sigma = kSigmaFloor;
            fit.floored_sigmas.push_back(node);
        }
        fit.params.sigma[q] = sigma;
    }

    std::sort(fit.floored_sigmas.begin(), fit.floored_sigmas.end());
    std::sort(fit.unidentifiable_nodes.begin(), fit.unidentifiable_nodes.end());
    fit.loglik = log_likelihood(fit.params, data, ord);
    return fit;
}

double profile_loglik(const Dataset& data, const NodeOrdering& ord) {
    return fit_mle(data, ord).loglik;
}

Gradient analytic_gradient(const GbnParams& params, const Dataset& data, const NodeOrdering& ord) {
    params.validate();
    check_dimensions(params, data, ord);
    const int p = data.node_count();
    for (int q = 0; q < p; ++q)
        if (params.sigma[q] <= 0.0) throw std::domain_error("analytic_gradient: sigma must be > 0");

    const Eigen::MatrixXd x_ord = values_in_ordering(data, ord);
    const Eigen::MatrixXd residuals = residual_matrix(params, x_ord);

    Gradient grad;
    grad.m = Eigen::VectorXd::Zero(p);
    grad.sigma = Eigen::VectorXd::Zero(p);
    grad.weights = Eigen::MatrixXd::Zero(p, p);
    for (int q = 0; q < p; ++q) {
        const int node = ord.node_at(q);
        const double var = params.sigma[q] * params.sigma[q];
        int n_j = 0;
        double sum_r = 0.0, sum_r2 = 0.0;
        for (int k = 0; k < data.sample_count(); ++k) {
            if (data.intervened(k, node)) continue;
            ++n_j;
            const double r = residuals(k, q);
            sum_r += r;
            sum_r2 += r * r;
            for (int a = 0; a < q; ++a) grad.weights(a, q) += x_ord(k, a) * r / var;
        }
        grad.m[q] = sum_r / var;
        grad.sigma[q] = -n_j / params.sigma[q] + sum_r2 / (var * params.sigma[q]);
    }
    return grad;
}

}  // namespace causalmcmc
