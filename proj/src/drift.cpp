#include "amuse/drift.hpp"

#include <cmath>
#include <stdexcept>

namespace amuse::drift {

MatrixXd sample_covariates(int n, int d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixXd X(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) X(i, j) = normal(rng);
  return X;
}

static inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

VectorXd logistic_response(const MatrixXd& X, const DgpParams& theta) {
  const int d = theta.dim();
  if (X.cols() < theta.covariate_dim())
    throw std::invalid_argument("logistic_response: covariate dimension " +
                                std::to_string(X.cols()) +
                                " < required " +
                                std::to_string(theta.covariate_dim()));
  VectorXd z = X.leftCols(d) * theta.coefficients;
  z.array() += theta.intercept;
  if (theta.extended_terms) {
    const auto& c = *theta.extended_terms;
    z += c[0] * (X.col(0).array() * X.col(1).array()).matrix();
    z += c[1] * (X.col(2).array() * X.col(2).array()).matrix();
    z += c[2] * X.col(5);
  }
  VectorXd p(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) p[i] = sigmoid(z[i]);
  return p;
}

DriftPath generate_drift_path(const DgpParams& theta1, const DriftConfig& phi,
                              int horizon, Rng& rng) {
  if (horizon < 1) throw std::invalid_argument("generate_drift_path: horizon < 1");
  if (!phi.valid()) throw std::invalid_argument("generate_drift_path: bad drift config");

  std::normal_distribution<double> step(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  DriftPath path;
  path.params.reserve(horizon);
  path.params.push_back(theta1);
  for (int t = 1; t < horizon; ++t) {
    DgpParams next = path.params.back();
    auto walk = [&](double& v) {
      v += phi.step_std * step(rng);
    };
    walk(next.intercept);
    for (Eigen::Index j = 0; j < next.coefficients.size(); ++j)
      walk(next.coefficients[j]);
    if (next.extended_terms)
      for (int j = 0; j < 3; ++j) walk((*next.extended_terms)[j]);

    if (phi.jump_prob > 0.0 && unif(rng) < phi.jump_prob) {
      auto shock = [&](double& v) { v += phi.jump_std * step(rng); };
      shock(next.intercept);
      for (Eigen::Index j = 0; j < next.coefficients.size(); ++j)
        shock(next.coefficients[j]);
      if (next.extended_terms)
        for (int j = 0; j < 3; ++j) shock((*next.extended_terms)[j]);
    }
    path.params.push_back(std::move(next));
  }
  return path;
}

Batch generate_batch(const DgpParams& theta, const MatrixXd& X, Rng& rng,
                     int time_index) {
  VectorXd p = logistic_response(X, theta);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Batch b;
  b.covariates = X;
  b.labels.resize(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i)
    b.labels[i] = unif(rng) < p[i] ? 1.0 : 0.0;
  b.time_index = time_index;
  return b;
}

}  // namespace amuse::drift
