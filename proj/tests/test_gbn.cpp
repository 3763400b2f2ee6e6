#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "causalmcmc/dag.hpp"
#include "causalmcmc/gbn.hpp"
#include "causalmcmc/seeding.hpp"

using namespace causalmcmc;

namespace {

GbnParams make_params(int p, const Eigen::MatrixXd& weights) {
  GbnParams params;
  params.m = Eigen::VectorXd::Zero(p);
  params.sigma = Eigen::VectorXd::Ones(p);
  params.weights = weights;
  return params;
}

// Random strictly upper triangular weight matrix in ordering coordinates.
Eigen::MatrixXd random_upper(int p, Rng& rng) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(p, p);
  for (int a = 0; a < p; ++a) {
    for (int b = a + 1; b < p; ++b) {
      w(a, b) = 2.0 * rng.uniform() - 1.0;
    }
  }
  return w;
}

WeightedDag random_dag(int p, double density, Rng& rng) {
  std::vector<std::tuple<int, int, double>> edges;
  const std::vector<int> perm = rng.permutation(p);
  for (int a = 0; a < p; ++a) {
    for (int b = a + 1; b < p; ++b) {
      if (rng.uniform() < density) {
        edges.emplace_back(perm[a], perm[b], 2.0 * rng.uniform() - 1.0);
      }
    }
  }
  return WeightedDag(p, edges);
}

}  // namespace

TEST_CASE("gbn params validate rejects malformed inputs") {
  GbnParams params = make_params(3, Eigen::MatrixXd::Zero(3, 3));
  CHECK_NOTHROW(params.validate());

  GbnParams bad_dim = params;
  bad_dim.sigma = Eigen::VectorXd::Ones(2);
  CHECK_THROWS_AS(bad_dim.validate(), std::invalid_argument);

  GbnParams bad_sigma = params;
  bad_sigma.sigma(1) = -0.1;
  CHECK_THROWS_AS(bad_sigma.validate(), std::invalid_argument);

  GbnParams bad_weights = params;
  bad_weights.weights(2, 1) = 0.3;  // below diagonal
  CHECK_THROWS_AS(bad_weights.validate(), std::invalid_argument);

  GbnParams diag = params;
  diag.weights(1, 1) = 0.3;
  CHECK_THROWS_AS(diag.validate(), std::invalid_argument);
}

TEST_CASE("params_in_ordering permutes node-indexed values into ordering coordinates") {
  const WeightedDag dag(3, {{2, 0, 0.4}, {0, 1, -0.6}});
  const NodeOrdering ord({2, 0, 1});
  Eigen::VectorXd means(3);
  means << 10.0, 20.0, 30.0;
  Eigen::VectorXd sigmas(3);
  sigmas << 1.0, 2.0, 3.0;
  const GbnParams params = params_in_ordering(dag, means, sigmas, ord);
  CHECK(params.m(0) == 30.0);  // node 2 sits at position 0
  CHECK(params.m(1) == 10.0);
  CHECK(params.m(2) == 20.0);
  CHECK(params.sigma(0) == 3.0);
  CHECK(params.sigma(1) == 1.0);
  CHECK(params.sigma(2) == 2.0);
  CHECK(params.weights(0, 1) == 0.4);   // edge 2 -> 0
  CHECK(params.weights(1, 2) == -0.6);  // edge 0 -> 1
  CHECK(params.weights(0, 2) == 0.0);

  // An ordering that breaks an edge is rejected.
  CHECK_THROWS_AS(params_in_ordering(dag, means, sigmas, NodeOrdering({0, 1, 2})),
                  std::invalid_argument);
}

TEST_CASE("total effects on a single edge and a chain") {
  // Two nodes, w12 = 0.5.
  Eigen::MatrixXd w2 = Eigen::MatrixXd::Zero(2, 2);
  w2(0, 1) = 0.5;
  const TotalEffectMatrix e2 = total_effects(make_params(2, w2), NodeOrdering::identity(2));
  CHECK(e2.values(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(e2.values(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(e2.values(1, 0) == 0.0);
  CHECK(e2.values(1, 1) == doctest::Approx(1.0).epsilon(1e-15));

  // Chain 1 -> 2 -> 3 with weights a, b: effect of 1 on 3 is a * b.
  const double a = 0.7;
  const double b = -1.3;
  Eigen::MatrixXd w3 = Eigen::MatrixXd::Zero(3, 3);
  w3(0, 1) = a;
  w3(1, 2) = b;
  const TotalEffectMatrix e3 = total_effects(make_params(3, w3), NodeOrdering::identity(3));
  CHECK(e3.values(0, 2) == doctest::Approx(a * b).epsilon(1e-14));
  CHECK(e3.values(0, 1) == doctest::Approx(a).epsilon(1e-14));
  CHECK(e3.values(1, 2) == doctest::Approx(b).epsilon(1e-14));
  CHECK(e3.values(2, 0) == 0.0);
}

TEST_CASE("total effects match the truncated power series for p = 4") {
  Rng rng(derive_seed(101, {tag("gbn"), 0}));
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd w = random_upper(4, rng);
    const TotalEffectMatrix effects = total_effects(make_params(4, w), NodeOrdering::identity(4));
    // W is nilpotent of index <= 4, so (I - W)^{-1} = I + W + W^2 + W^3 exactly.
    const Eigen::MatrixXd series = Eigen::MatrixXd::Identity(4, 4) + w + w * w + w * w * w;
    CHECK((effects.values - series).cwiseAbs().maxCoeff() < 1e-12);
    // Inverse identity: (I - W) L = I.
    const Eigen::MatrixXd residual =
        (Eigen::MatrixXd::Identity(4, 4) - w) * effects.values - Eigen::MatrixXd::Identity(4, 4);
    CHECK(residual.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("total effects are invariant to the choice of valid ordering") {
  const WeightedDag dag(4, {{0, 1, 0.8}, {0, 2, -0.5}, {1, 3, 0.4}, {2, 3, 0.9}});
  const Eigen::VectorXd means = Eigen::VectorXd::Zero(4);
  const Eigen::VectorXd sigmas = Eigen::VectorXd::Ones(4);
  const NodeOrdering ord_a({0, 1, 2, 3});
  const NodeOrdering ord_b({0, 2, 1, 3});
  const TotalEffectMatrix ea = total_effects(params_in_ordering(dag, means, sigmas, ord_a), ord_a);
  const TotalEffectMatrix eb = total_effects(params_in_ordering(dag, means, sigmas, ord_b), ord_b);
  CHECK((ea.values - eb.values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("nonzero total effects imply ancestry") {
  Rng rng(derive_seed(101, {tag("gbn"), 1}));
  for (int trial = 0; trial < 30; ++trial) {
    const int p = 2 + rng.uniform_int(5);  // p in [2, 6]
    const WeightedDag dag = random_dag(p, 0.5, rng);
    const NodeOrdering ord(dag.topological_order());
    const GbnParams params =
        params_in_ordering(dag, Eigen::VectorXd::Zero(p), Eigen::VectorXd::Ones(p), ord);
    const TotalEffectMatrix effects = total_effects(params, ord);
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) {
        if (i == j) {
          CHECK(effects.values(i, j) == 1.0);
        } else if (std::abs(effects.values(i, j)) > 1e-12) {
          CHECK(dag.is_ancestor(i, j));
        }
      }
    }
  }
}

TEST_CASE("observational moments follow mu = m L and the quadratic form") {
  Rng rng(derive_seed(101, {tag("gbn"), 2}));
  const int p = 5;
  const WeightedDag dag = random_dag(p, 0.6, rng);
  const NodeOrdering ord(dag.topological_order());
  Eigen::VectorXd means(p);
  Eigen::VectorXd sigmas(p);
  for (int j = 0; j < p; ++j) {
    means(j) = 2.0 * rng.uniform() - 1.0;
    sigmas(j) = 0.5 + rng.uniform();
  }
  const GbnParams params = params_in_ordering(dag, means, sigmas, ord);
  const GaussianMoments moments = intervention_moments(params, ord, {}, Eigen::VectorXd());

  // Oracle in ordering coordinates: L = (I - W)^{-1}, mu = m L, Sigma = L' D L.
  const Eigen::MatrixXd L =
      (Eigen::MatrixXd::Identity(p, p) - params.weights).inverse();
  const Eigen::RowVectorXd mu = params.m.transpose() * L;
  const Eigen::MatrixXd cov = L.transpose() * params.sigma.array().square().matrix().asDiagonal() * L;
  for (int a = 0; a < p; ++a) {
    const int node_a = ord.node_at(a);
    CHECK(moments.mean(node_a) == doctest::Approx(mu(a)).epsilon(1e-12));
    for (int b = 0; b < p; ++b) {
      const int node_b = ord.node_at(b);
      CHECK(moments.covariance(node_a, node_b) == doctest::Approx(cov(a, b)).epsilon(1e-12));
    }
  }
}

TEST_CASE("intervention moments fix targets and sever incoming edges") {
  // Chain 1 -> 2 with weight 0.5, m = (1, 2), sigma = (0.3, 0.4).
  const WeightedDag dag(2, {{0, 1, 0.5}});
  Eigen::VectorXd means(2);
  means << 1.0, 2.0;
  Eigen::VectorXd sigmas(2);
  sigmas << 0.3, 0.4;
  const NodeOrdering ord = NodeOrdering::identity(2);
  const GbnParams params = params_in_ordering(dag, means, sigmas, ord);

  Eigen::VectorXd fixed(1);
  fixed << 10.0;
  const GaussianMoments moments = intervention_moments(params, ord, {0}, fixed);
  CHECK(moments.mean(0) == 10.0);
  CHECK(moments.mean(1) == doctest::Approx(2.0 + 0.5 * 10.0).epsilon(1e-14));
  CHECK(moments.covariance(0, 0) == 0.0);
  CHECK(moments.covariance(0, 1) == 0.0);
  CHECK(moments.covariance(1, 0) == 0.0);
  CHECK(moments.covariance(1, 1) == doctest::Approx(0.16).epsilon(1e-14));

  // Intervening on the sink leaves the source observational.
  const GaussianMoments sink = intervention_moments(params, ord, {1}, fixed);
  CHECK(sink.mean(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sink.mean(1) == 10.0);
  CHECK(sink.covariance(0, 0) == doctest::Approx(0.09).epsilon(1e-14));
  CHECK(sink.covariance(1, 1) == 0.0);

  CHECK_THROWS_AS(intervention_moments(params, ord, {2}, fixed), std::invalid_argument);
  CHECK_THROWS_AS(intervention_moments(params, ord, {0}, Eigen::VectorXd()),
                  std::invalid_argument);
}

TEST_CASE("intervention moments match a forward-simulation oracle") {
  // 3-node network, do(X2 = 1); Monte-Carlo forward simulation as oracle.
  const WeightedDag dag(3, {{0, 1, 0.9}, {1, 2, -0.8}, {0, 2, 0.5}});
  Eigen::VectorXd means(3);
  means << 0.4, -0.2, 0.7;
  Eigen::VectorXd sigmas(3);
  sigmas << 0.6, 0.8, 0.5;
  const NodeOrdering ord = NodeOrdering::identity(3);
  const GbnParams params = params_in_ordering(dag, means, sigmas, ord);
  Eigen::VectorXd fixed(1);
  fixed << 1.0;
  const GaussianMoments moments = intervention_moments(params, ord, {1}, fixed);

  const int n = 1000000;
  Rng rng(derive_seed(101, {tag("gbn"), 3}));
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(3);
  Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(3, 3);
  for (int s = 0; s < n; ++s) {
    Eigen::Vector3d x;
    x(0) = means(0) + sigmas(0) * rng.normal();
    x(1) = 1.0;  // clamped
    x(2) = means(2) + 0.5 * x(0) - 0.8 * x(1) + sigmas(2) * rng.normal();
    sum += x;
    sum_sq += x * x.transpose();
  }
  const Eigen::VectorXd sim_mean = sum / n;
  const Eigen::MatrixXd sim_cov = sum_sq / n - sim_mean * sim_mean.transpose();
  for (int i = 0; i < 3; ++i) {
    const double se_mean = std::sqrt(std::max(moments.covariance(i, i), 1e-30) / n);
    CHECK(std::abs(sim_mean(i) - moments.mean(i)) <= 3.0 * se_mean + 1e-12);
    for (int j = 0; j < 3; ++j) {
      const double se_cov =
          std::sqrt((moments.covariance(i, i) * moments.covariance(j, j) +
                     moments.covariance(i, j) * moments.covariance(i, j)) /
                    n);
      CHECK(std::abs(sim_cov(i, j) - moments.covariance(i, j)) <= 3.0 * se_cov + 1e-12);
    }
  }
}

TEST_CASE("intervention covariance stays symmetric positive semidefinite") {
  Rng rng(derive_seed(101, {tag("gbn"), 4}));
  for (int trial = 0; trial < 10; ++trial) {
    const int p = 2 + rng.uniform_int(4);
    const WeightedDag dag = random_dag(p, 0.5, rng);
    const NodeOrdering ord(dag.topological_order());
    Eigen::VectorXd means = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd sigmas = Eigen::VectorXd::Ones(p);
    const GbnParams params = params_in_ordering(dag, means, sigmas, ord);
    const int target = rng.uniform_int(p);
    Eigen::VectorXd fixed(1);
    fixed << 1.0;
    const GaussianMoments moments = intervention_moments(params, ord, {target}, fixed);
    CHECK((moments.covariance - moments.covariance.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(moments.covariance);
    CHECK(eig.eigenvalues().minCoeff() > -1e-10);
  }
}
