#include "amuse/classifier.hpp"

#include <cmath>
#include <stdexcept>

namespace amuse::classifier {

namespace {

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

LogisticModel fit(const Batch& batch, const FitConfig& config) {
  const int n = batch.size();
  if (n < 2) throw std::invalid_argument("fit: need at least 2 samples");
  const int d = std::min<int>(config.feature_dim,
                              static_cast<int>(batch.covariates.cols()));
  const int p = d + 1;

  // design with leading intercept column
  MatrixXd X(n, p);
  X.col(0).setOnes();
  X.rightCols(d) = batch.covariates.leftCols(d);
  const VectorXd& y = batch.labels;

  VectorXd beta = VectorXd::Zero(p);
  bool converged = false;
  for (int iter = 0; iter < config.max_iter; ++iter) {
    VectorXd eta = X * beta;
    VectorXd mu(n), w(n);
    for (int i = 0; i < n; ++i) {
      mu[i] = sigmoid(eta[i]);
      w[i] = mu[i] * (1.0 - mu[i]);
    }
    MatrixXd H = X.transpose() * w.asDiagonal() * X;
    H.diagonal().array() += config.ridge;
    VectorXd g = X.transpose() * (y - mu) - config.ridge * beta;
    VectorXd delta = H.ldlt().solve(g);
    if (!delta.allFinite())
      throw std::runtime_error("fit: degenerate batch (singular design)");
    beta += delta;
    if (delta.cwiseAbs().maxCoeff() < config.tol) {
      converged = true;
      break;
    }
  }
  if (!beta.allFinite())
    throw std::runtime_error("fit: degenerate batch (non-finite parameters)");

  LogisticModel model;
  model.intercept = beta[0];
  model.weights = beta.tail(d);
  model.fit_time_index = batch.time_index;
  model.converged = converged;
  return model;
}

VectorXd predict_proba(const LogisticModel& model, const MatrixXd& X) {
  if (X.cols() < model.dim())
    throw std::invalid_argument("predict_proba: dimension mismatch");
  VectorXd z = X.leftCols(model.dim()) * model.weights;
  z.array() += model.intercept;
  VectorXd p(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) p[i] = sigmoid(z[i]);
  return p;
}

MetricSet evaluate(const LogisticModel& model, const Batch& batch,
                   double threshold) {
  const int n = batch.size();
  if (n == 0) throw std::invalid_argument("evaluate: empty batch");
  if (threshold <= 0.0 || threshold >= 1.0)
    throw std::invalid_argument("evaluate: threshold must be in (0,1)");

  VectorXd p = predict_proba(model, batch.covariates);
  int tp = 0, fp = 0, fn = 0, correct = 0;
  double ce = 0.0;
  constexpr double kClamp = 1e-12;
  for (int i = 0; i < n; ++i) {
    const bool yhat = p[i] >= threshold;
    const bool y = batch.labels[i] > 0.5;
    if (yhat == y) ++correct;
    if (yhat && y) ++tp;
    if (yhat && !y) ++fp;
    if (!yhat && y) ++fn;
    const double q = std::min(1.0 - kClamp, std::max(kClamp, p[i]));
    ce -= y ? std::log(q) : std::log(1.0 - q);
  }
  MetricSet m;
  m.accuracy = static_cast<double>(correct) / n;
  m.precision = (tp + fp) > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
  m.recall = (tp + fn) > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
  m.cross_entropy = ce / n;
  return m;
}

}  // namespace amuse::classifier
