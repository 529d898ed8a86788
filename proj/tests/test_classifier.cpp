#include "amuse/classifier.hpp"

#include <cmath>

#include "doctest.h"

using namespace amuse;
using namespace amuse::classifier;
using drift::Batch;
using drift::DgpParams;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

DgpParams make_theta(double intercept, std::vector<double> coefs) {
  DgpParams theta;
  theta.intercept = intercept;
  theta.coefficients = Eigen::Map<VectorXd>(coefs.data(), coefs.size());
  return theta;
}

Batch make_batch(const DgpParams& theta, int n, std::uint64_t seed) {
  Rng cov_rng = make_rng(seed, "cov");
  Rng label_rng = make_rng(seed, "label");
  MatrixXd X = drift::sample_covariates(n, theta.dim(), cov_rng);
  return drift::generate_batch(theta, X, label_rng, 1);
}

// independent oracle: plain full-batch gradient descent on the ridge
// penalized mean log loss
std::pair<double, VectorXd> gd_fit(const Batch& batch, double ridge) {
  const int n = batch.size();
  const int d = static_cast<int>(batch.covariates.cols());
  MatrixXd X(n, d + 1);
  X.col(0).setOnes();
  X.rightCols(d) = batch.covariates;
  VectorXd beta = VectorXd::Zero(d + 1);
  const double lr = 2.0;
  for (int iter = 0; iter < 200000; ++iter) {
    VectorXd eta = X * beta;
    VectorXd mu(n);
    for (int i = 0; i < n; ++i) mu[i] = 1.0 / (1.0 + std::exp(-eta[i]));
    VectorXd grad = (X.transpose() * (mu - batch.labels) + ridge * beta) / n;
    beta -= lr * grad;
    if (grad.cwiseAbs().maxCoeff() < 1e-11) break;
  }
  return {beta[0], beta.tail(d)};
}

}  // namespace

TEST_CASE("IRLS recovers the generating parameters at large n") {
  DgpParams theta = make_theta(0.5, {1, -1, 0.5, 0, 2});
  Batch batch = make_batch(theta, 50000, 101);
  FitConfig config;
  LogisticModel model = fit(batch, config);
  CHECK(model.converged);
  CHECK(std::abs(model.intercept - theta.intercept) < 0.05);
  for (int j = 0; j < 5; ++j)
    CHECK(std::abs(model.weights[j] - theta.coefficients[j]) < 0.05);
}

TEST_CASE("IRLS matches an independent gradient-descent fit") {
  DgpParams theta = make_theta(-0.3, {0.8, 0.2, -1.1, 0.0, 0.6});
  Batch batch = make_batch(theta, 2000, 202);
  FitConfig config;
  LogisticModel model = fit(batch, config);
  auto [gd_intercept, gd_weights] = gd_fit(batch, config.ridge);
  CHECK(std::abs(model.intercept - gd_intercept) < 1e-4);
  for (int j = 0; j < 5; ++j)
    CHECK(std::abs(model.weights[j] - gd_weights[j]) < 1e-4);
}

TEST_CASE("degenerate batches") {
  DgpParams theta = make_theta(8.0, {0, 0, 0, 0, 0});
  Batch batch = make_batch(theta, 500, 303);
  for (int i = 0; i < batch.size(); ++i) batch.labels[i] = 1.0;
  FitConfig config;
  LogisticModel model = fit(batch, config);  // ridge keeps this finite
  CHECK(std::isfinite(model.intercept));
  CHECK(model.weights.allFinite());

  Batch tiny;
  tiny.covariates = MatrixXd::Zero(1, 5);
  tiny.labels = VectorXd::Zero(1);
  CHECK_THROWS(fit(tiny, config));
}

TEST_CASE("refitting the same batch is deterministic") {
  DgpParams theta = make_theta(0.1, {1, 0, 0, -1, 0});
  Batch batch = make_batch(theta, 1000, 404);
  FitConfig config;
  LogisticModel a = fit(batch, config);
  LogisticModel b = fit(batch, config);
  CHECK(a.intercept == b.intercept);
  CHECK(a.weights == b.weights);
}

TEST_CASE("predict_proba") {
  LogisticModel zero;
  zero.weights = VectorXd::Zero(5);
  Rng rng = make_rng(1, "cov");
  MatrixXd X = drift::sample_covariates(20, 5, rng);
  VectorXd p = predict_proba(zero, X);
  for (int i = 0; i < 20; ++i) CHECK(p[i] == 0.5);

  // the model equal to the true DGP reproduces its response exactly
  DgpParams theta = make_theta(0.7, {1, -2, 0.5, 0, 1});
  LogisticModel as_dgp;
  as_dgp.intercept = theta.intercept;
  as_dgp.weights = theta.coefficients;
  CHECK(predict_proba(as_dgp, X) == drift::logistic_response(X, theta));

  // monotone in a positively weighted feature
  MatrixXd base = MatrixXd::Zero(1, 5);
  MatrixXd bumped = base;
  bumped(0, 0) = 1.0;
  CHECK(predict_proba(as_dgp, bumped)[0] > predict_proba(as_dgp, base)[0]);

  CHECK_THROWS(predict_proba(as_dgp, MatrixXd::Zero(2, 3)));
}

TEST_CASE("evaluate metrics") {
  SUBCASE("perfect separation") {
    Batch batch;
    batch.covariates = MatrixXd::Zero(10, 1);
    batch.labels = VectorXd::Zero(10);
    for (int i = 0; i < 5; ++i) {
      batch.covariates(i, 0) = 10.0;
      batch.labels[i] = 1.0;
    }
    for (int i = 5; i < 10; ++i) batch.covariates(i, 0) = -10.0;
    LogisticModel model;
    model.weights = VectorXd::Ones(1);
    MetricSet m = evaluate(model, batch, 0.5);
    CHECK(m.accuracy == 1.0);
    CHECK(m.precision == 1.0);
    CHECK(m.recall == 1.0);
  }
  SUBCASE("uninformative model on balanced labels has log-2 cross entropy") {
    Batch batch;
    batch.covariates = MatrixXd::Zero(10, 2);
    batch.labels = VectorXd::Zero(10);
    for (int i = 0; i < 5; ++i) batch.labels[i] = 1.0;
    LogisticModel model;
    model.weights = VectorXd::Zero(2);
    MetricSet m = evaluate(model, batch, 0.5);
    CHECK(m.cross_entropy == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(m.accuracy == 0.5);  // p = 0.5 thresholds to 1, half the labels are 1
  }
  SUBCASE("no positive predictions: precision and recall are 0 by convention") {
    // confusion-matrix oracle on a hand-built 10-row batch: all
    // predictions negative, 3 positive labels -> tp=0, fp=0, fn=3
    Batch batch;
    batch.covariates = MatrixXd::Constant(10, 1, -5.0);
    batch.labels = VectorXd::Zero(10);
    batch.labels[0] = batch.labels[4] = batch.labels[9] = 1.0;
    LogisticModel model;
    model.weights = VectorXd::Ones(1);
    MetricSet m = evaluate(model, batch, 0.5);
    CHECK(m.precision == 0.0);
    CHECK(m.recall == 0.0);
    CHECK(m.accuracy == doctest::Approx(0.7));
  }
  SUBCASE("error paths") {
    Batch empty;
    empty.covariates = MatrixXd::Zero(0, 1);
    empty.labels = VectorXd::Zero(0);
    LogisticModel model;
    model.weights = VectorXd::Ones(1);
    CHECK_THROWS(evaluate(model, empty, 0.5));
    Batch batch;
    batch.covariates = MatrixXd::Zero(2, 1);
    batch.labels = VectorXd::Zero(2);
    CHECK_THROWS(evaluate(model, batch, 0.0));
    CHECK_THROWS(evaluate(model, batch, 1.0));
  }
}

TEST_CASE("evaluate is pure") {
  DgpParams theta = make_theta(0.2, {1, -1, 0, 0, 0});
  Batch batch = make_batch(theta, 300, 505);
  FitConfig config;
  LogisticModel model = fit(batch, config);
  MetricSet a = evaluate(model, batch, 0.5);
  MetricSet b = evaluate(model, batch, 0.5);
  CHECK(a.accuracy == b.accuracy);
  CHECK(a.cross_entropy == b.cross_entropy);
  CHECK(a.accuracy >= 0.0);
  CHECK(a.accuracy <= 1.0);
}

TEST_CASE("true parameters minimize expected cross entropy") {
  DgpParams theta = make_theta(0.4, {1, -0.5, 0.8, 0, 1.2});
  Batch batch = make_batch(theta, 50000, 606);
  LogisticModel truth;
  truth.intercept = theta.intercept;
  truth.weights = theta.coefficients;
  const double ce_truth = evaluate(truth, batch, 0.5).cross_entropy;

  Rng rng = make_rng(77, "perturb");
  std::normal_distribution<double> normal(0.0, 0.3);
  for (int trial = 0; trial < 5; ++trial) {
    LogisticModel perturbed = truth;
    perturbed.intercept += normal(rng);
    for (int j = 0; j < 5; ++j) perturbed.weights[j] += normal(rng);
    CHECK(evaluate(perturbed, batch, 0.5).cross_entropy >= ce_truth - 1e-3);
  }
}
