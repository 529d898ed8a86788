#ifndef AMUSE_DRIFT_HPP_
#define AMUSE_DRIFT_HPP_

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "amuse/rng.hpp"

namespace amuse::drift {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Parameters of the data generating process m(x; theta).
// The base form is a plain logistic regression on d features. When
// extended_terms is present the linear predictor additionally includes
// x1*x2 (interaction), x3^2 (higher order) and x6 (extra covariate),
// which is the misspecified-truth scenario: the deployed classifier only
// ever sees x1..x5 linearly.
struct DgpParams {
  double intercept = 0.0;
  VectorXd coefficients;               // length = base feature dimension
  std::optional<Eigen::Vector3d> extended_terms;  // [x1*x2, x3^2, x6]

  int dim() const { return static_cast<int>(coefficients.size()); }
  // number of covariate columns the DGP consumes
  int covariate_dim() const { return extended_terms ? 6 : dim(); }
};

// Drift generating process D(phi): a per-coordinate Gaussian random walk
// with a small per-step probability of an additional sudden-drift shock.
struct DriftConfig {
  double step_std = 0.02;
  double jump_prob = 0.01;
  double jump_std = 0.5;

  bool valid() const {
    return step_std >= 0.0 && jump_std >= 0.0 && jump_prob >= 0.0 &&
           jump_prob <= 1.0;
  }
};

// The sequence theta_1..theta_J of DGP parameters over one episode.
struct DriftPath {
  std::vector<DgpParams> params;

  int horizon() const { return static_cast<int>(params.size()); }
};

// One time-step dataset: covariates plus binary labels.
struct Batch {
  MatrixXd covariates;  // n x d
  VectorXd labels;      // entries in {0,1}
  int time_index = 0;

  int size() const { return static_cast<int>(covariates.rows()); }
};

// i.i.d. standard normal covariates.
MatrixXd sample_covariates(int n, int d, Rng& rng);

// P(Y=1|X=x) under the (possibly extended) logistic DGP.
VectorXd logistic_response(const MatrixXd& X, const DgpParams& theta);

DriftPath generate_drift_path(const DgpParams& theta1, const DriftConfig& phi,
                              int horizon, Rng& rng);

// Labels ~ Bernoulli(logistic_response(X, theta)). The covariates are
// supplied by the caller: the training environment reuses X_1 across the
// episode, evaluation streams resample per step.
Batch generate_batch(const DgpParams& theta, const MatrixXd& X, Rng& rng,
                     int time_index);

}  // namespace amuse::drift

#endif  // AMUSE_DRIFT_HPP_
