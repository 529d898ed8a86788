#include "amuse/drift.hpp"

#include <cmath>

#include "doctest.h"

using namespace amuse;
using namespace amuse::drift;

namespace {

DgpParams plain_theta(double intercept, std::vector<double> coefs) {
  DgpParams theta;
  theta.intercept = intercept;
  theta.coefficients =
      Eigen::Map<Eigen::VectorXd>(coefs.data(), coefs.size());
  return theta;
}

}  // namespace

TEST_CASE("covariates are standard normal at large n") {
  Rng rng = make_rng(7, "cov");
  MatrixXd X = sample_covariates(10000, 5, rng);
  for (int j = 0; j < 5; ++j) {
    const double mean = X.col(j).mean();
    const double var = (X.col(j).array() - mean).square().sum() / X.rows();
    CHECK(std::abs(mean) < 0.05);
    CHECK(std::abs(var - 1.0) < 0.1);
  }
}

TEST_CASE("covariate sampling shapes and determinism") {
  Rng rng = make_rng(3, "cov");
  MatrixXd tiny = sample_covariates(1, 1, rng);
  CHECK(tiny.rows() == 1);
  CHECK(std::isfinite(tiny(0, 0)));

  Rng a = make_rng(42, "cov");
  Rng b = make_rng(42, "cov");
  CHECK(sample_covariates(50, 4, a) == sample_covariates(50, 4, b));
}

TEST_CASE("logistic response basics") {
  DgpParams theta = plain_theta(0.0, {0, 0, 0, 0, 0});
  MatrixXd X = MatrixXd::Zero(3, 5);
  VectorXd p = logistic_response(X, theta);
  for (int i = 0; i < 3; ++i) CHECK(p[i] == doctest::Approx(0.5));

  // direct evaluation oracle
  DgpParams theta2 = plain_theta(0.0, {1, 0, 0, 0, 0});
  MatrixXd x2 = MatrixXd::Zero(1, 5);
  x2(0, 0) = 2.0;
  CHECK(logistic_response(x2, theta2)[0] ==
        doctest::Approx(1.0 / (1.0 + std::exp(-2.0))).epsilon(1e-12));

  // monotone in the intercept, saturating towards 1
  double last = 0.0;
  for (double b : {0.0, 2.0, 10.0, 20.0}) {
    DgpParams t = plain_theta(b, {0, 0, 0, 0, 0});
    const double v = logistic_response(X, t)[0];
    CHECK(v > last);
    CHECK(v < 1.0);
    last = v;
  }
  CHECK(last > 0.999999);

  CHECK_THROWS(logistic_response(MatrixXd::Zero(2, 3), theta));
}

TEST_CASE("extended DGP with zero extra terms reduces to the plain one") {
  Rng rng = make_rng(5, "cov");
  MatrixXd X = sample_covariates(200, 6, rng);
  DgpParams plain = plain_theta(0.3, {1, -1, 0.5, 0, 2});
  DgpParams extended = plain;
  extended.extended_terms = Eigen::Vector3d::Zero();
  CHECK(logistic_response(X, plain) == logistic_response(X, extended));
}

TEST_CASE("degenerate drift configs") {
  DgpParams theta = plain_theta(0.1, {1, 2, 3, 4, 5});
  Rng rng = make_rng(1, "drift");

  DriftConfig frozen{0.0, 0.0, 0.0};
  DriftPath path = generate_drift_path(theta, frozen, 100, rng);
  CHECK(path.horizon() == 100);
  CHECK(path.params[0].coefficients == theta.coefficients);
  for (const auto& p : path.params) {
    CHECK(p.intercept == theta.intercept);
    CHECK(p.coefficients == theta.coefficients);
  }
}

TEST_CASE("random walk variance grows linearly") {
  // Monte-Carlo vs the random-walk variance formula t * step_std^2
  const double step_std = 0.02;
  const int J = 500, paths = 1500;
  DgpParams theta = plain_theta(0.0, {0, 0, 0, 0, 0});
  DriftConfig phi{step_std, 0.0, 0.0};
  Rng rng = make_rng(11, "walk");
  for (int t : {100, 400}) {
    double ss = 0.0;
    long count = 0;
    for (int k = 0; k < paths / 5; ++k) {
      DriftPath path = generate_drift_path(theta, phi, J, rng);
      for (int j = 0; j < 5; ++j) {
        const double diff =
            path.params[t].coefficients[j] - path.params[0].coefficients[j];
        ss += diff * diff;
        ++count;
      }
    }
    const double var = ss / count;
    CHECK(var == doctest::Approx(t * step_std * step_std).epsilon(0.10));
  }
}

TEST_CASE("zero-magnitude jumps keep the pure random-walk variance") {
  DgpParams theta = plain_theta(0.0, {0, 0, 0});
  DriftConfig phi{0.05, 1.0, 0.0};
  Rng rng = make_rng(13, "walk");
  double ss = 0.0;
  long count = 0;
  const int t = 200;
  for (int k = 0; k < 300; ++k) {
    DriftPath path = generate_drift_path(theta, phi, t + 1, rng);
    for (int j = 0; j < 3; ++j) {
      const double diff = path.params[t].coefficients[j];
      ss += diff * diff;
      ++count;
    }
  }
  CHECK(ss / count == doctest::Approx(t * 0.05 * 0.05).epsilon(0.10));
}

TEST_CASE("batch generation") {
  Rng cov_rng = make_rng(17, "cov");
  MatrixXd X = sample_covariates(10000, 5, cov_rng);

  SUBCASE("huge intercept saturates the labels") {
    DgpParams theta = plain_theta(50.0, {0, 0, 0, 0, 0});
    Rng rng = make_rng(17, "label");
    Batch batch = generate_batch(theta, X, rng, 1);
    CHECK(batch.labels.mean() > 0.99);
  }
  SUBCASE("all-zero parameters give balanced labels") {
    DgpParams theta = plain_theta(0.0, {0, 0, 0, 0, 0});
    Rng rng = make_rng(18, "label");
    Batch batch = generate_batch(theta, X, rng, 1);
    CHECK(batch.labels.mean() == doctest::Approx(0.5).epsilon(0.04));
    for (int i = 0; i < batch.size(); ++i)
      CHECK((batch.labels[i] == 0.0 || batch.labels[i] == 1.0));
  }
  SUBCASE("identical rng state gives identical batches") {
    DgpParams theta = plain_theta(0.2, {1, -1, 0, 0, 0.5});
    Rng a = make_rng(19, "label");
    Rng b = make_rng(19, "label");
    Batch ba = generate_batch(theta, X, a, 3);
    Batch bb = generate_batch(theta, X, b, 3);
    CHECK(ba.labels == bb.labels);
    CHECK(ba.covariates == bb.covariates);
  }
}

TEST_CASE("response probabilities stay valid under extreme parameters") {
  Rng rng = make_rng(23, "cov");
  MatrixXd X = sample_covariates(500, 5, rng);
  // moderate logits give strictly interior probabilities; huge logits may
  // round to the endpoints but must stay finite and within [0,1]
  DgpParams moderate = plain_theta(1.0, {1, -1, 0, 1, 0});
  VectorXd p = logistic_response(X, moderate);
  for (int i = 0; i < p.size(); ++i) {
    CHECK(p[i] > 0.0);
    CHECK(p[i] < 1.0);
  }
  for (double scale : {50.0, 500.0}) {
    DgpParams theta = plain_theta(scale, {scale, -scale, 0, scale, 0});
    VectorXd q = logistic_response(X, theta);
    for (int i = 0; i < q.size(); ++i) {
      CHECK(q[i] >= 0.0);
      CHECK(q[i] <= 1.0);
      CHECK(std::isfinite(q[i]));
    }
  }
}
