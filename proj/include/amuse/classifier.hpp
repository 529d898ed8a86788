#ifndef AMUSE_CLASSIFIER_HPP_
#define AMUSE_CLASSIFIER_HPP_

#include <Eigen/Dense>

#include "amuse/drift.hpp"

namespace amuse::classifier {

using drift::Batch;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// The deployed logistic-regression classifier. Always fits on the first
// `feature_dim` covariate columns of a batch; under the misspecified
// truth those are the only columns the modeller believes in.
struct LogisticModel {
  double intercept = 0.0;
  VectorXd weights;
  int fit_time_index = 0;
  bool converged = false;

  int dim() const { return static_cast<int>(weights.size()); }
};

struct FitConfig {
  int feature_dim = 5;      // leading covariate columns used by the model
  double ridge = 1e-8;
  double tol = 1e-8;        // max-abs parameter change
  int max_iter = 100;
};

struct MetricSet {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double cross_entropy = 0.0;
};

// Penalized maximum-likelihood fit via iteratively reweighted least squares.
// Throws on a singular (non-finite) design.
LogisticModel fit(const Batch& batch, const FitConfig& config);

VectorXd predict_proba(const LogisticModel& model, const MatrixXd& X);

// Thresholded accuracy/precision/recall plus cross entropy with the
// predicted probabilities clamped to [1e-12, 1-1e-12]. Precision and
// recall follow the 0/0 -> 0 convention.
MetricSet evaluate(const LogisticModel& model, const Batch& batch,
                   double threshold = 0.5);

}  // namespace amuse::classifier

#endif  // AMUSE_CLASSIFIER_HPP_
