#ifndef AMUSE_MDP_HPP_
#define AMUSE_MDP_HPP_

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "amuse/classifier.hpp"
#include "amuse/drift.hpp"

namespace amuse::mdp {

using classifier::FitConfig;
using classifier::LogisticModel;
using classifier::MetricSet;
using drift::Batch;
using Eigen::VectorXd;

// Width of the recent accuracy window carried in the state.
inline constexpr int kAccWindow = 3;

inline int state_dim(int model_dim) {
  // [acc_t, acc_{t-1}, acc_{t-2}] + acc_at_last_update
  // + [precision_t, recall_t, cross_entropy_t]
  // + model coefficients (intercept + weights) + steps_since_update / J
  return kAccWindow + 1 + 3 + (model_dim + 1) + 1;
}

// u(t) bookkeeping. Constructed at t = 1 with the mandatory initial
// update a_1 = 1 already applied.
struct UpdateTracker {
  int last_update = 1;
  std::vector<int> action_history{1};

  int current_time() const { return static_cast<int>(action_history.size()); }
};

// Appends a_t and maintains the u(t) recursion. t must be sequential.
void apply_action(UpdateTracker& tracker, int t, int action);

// Per-step utility and action record; cumulative utility is recomputable
// for any update cost mu from this alone.
struct UtilityLedger {
  std::vector<double> utilities;  // eta(Delta_t, C_{u(t)}), t = 1..
  std::vector<int> actions;       // a_t
};

// Sum of utilities minus mu per update, with the forced initial fit at
// t = 1 charged zero cost for every strategy.
double cumulative_utility(const UtilityLedger& ledger, double mu);

// State s_t. `recent` holds MetricSets for the incumbent on the most
// recent batches, newest first; missing history is padded by repeating
// the earliest available value. Precision/recall/cross-entropy come from
// the newest entry only.
VectorXd build_state(const std::vector<MetricSet>& recent,
                     double acc_at_last_update, const LogisticModel& model,
                     int t, const UpdateTracker& tracker, int horizon);

// r_t per the update reward: accuracy gain of the freshly fitted
// candidate over the incumbent on the current batch, minus rho; exactly
// 0 when no update is taken.
double compute_reward(const Batch& batch, const LogisticModel& candidate,
                      const LogisticModel& incumbent, double rho, int action);

// Sequential deployment bookkeeping around one classifier lifetime over
// an externally supplied batch stream. Drives both the training
// environment and the strategy-agnostic evaluation loop:
//
//   Session s(batch1, fit, horizon, rho);
//   for t = 2..T: s.observe(batch_t); a = strategy(...); s.act(a);
class Session {
 public:
  Session(const Batch& batch1, const FitConfig& fit, int horizon, double rho);

  // Presents Delta_t; evaluates the incumbent on it and returns s_t.
  const VectorXd& observe(const Batch& batch);

  // Applies a_t to the observed batch. Fits a candidate model only when
  // action = 1 (it then becomes the incumbent). Returns r_t.
  double act(int action);

  const VectorXd& state() const { return state_; }
  const LogisticModel& incumbent() const { return incumbent_; }
  const UpdateTracker& tracker() const { return tracker_; }
  const UtilityLedger& ledger() const { return ledger_; }
  const std::vector<double>& rewards() const { return rewards_; }
  const MetricSet& current_metrics() const { return recent_.front(); }
  int time() const { return t_; }
  int horizon() const { return horizon_; }
  int fit_count() const { return fit_count_; }

  // Per-example 0/1 misclassification indicators of the incumbent on the
  // batch most recently passed to observe(), in row order. Used by the
  // streaming drift detectors.
  const std::vector<int>& incumbent_errors() const { return errors_; }

 private:
  FitConfig fit_;
  int horizon_;
  double rho_;
  int t_ = 1;
  bool pending_ = false;  // observe() called, act() not yet
  LogisticModel incumbent_;
  UpdateTracker tracker_;
  UtilityLedger ledger_;
  std::vector<double> rewards_;
  std::vector<MetricSet> recent_;  // newest first, size <= kAccWindow
  double acc_at_last_update_ = 0.0;
  VectorXd state_;
  Batch current_batch_;
  std::vector<int> errors_;
  int fit_count_ = 0;
};

// Gym-style step/reset interface shared by the PPO trainer and the toy
// test environments.
struct StepResult {
  VectorXd state;
  double reward = 0.0;
  bool done = false;
};

class Env {
 public:
  virtual ~Env() = default;
  virtual VectorXd reset() = 0;
  virtual StepResult step(int action) = 0;
  virtual int state_dim() const = 0;
};

// The simulated drift environment: each episode draws a fresh drift path
// from the assumed process, fits C_1 on a fresh Delta_1 and then runs
// horizon-1 decision steps. covariate resampling is configurable; the
// training environment reuses X_1 for the whole episode.
struct DriftEnvConfig {
  drift::DgpParams theta1;
  drift::DriftConfig phi;
  int horizon = 200;       // J
  int batch_size = 10000;  // n
  bool resample_covariates = false;
  FitConfig fit;
  double rho = 0.02;
  std::uint64_t seed = 0;
};

class DriftEnv : public Env {
 public:
  explicit DriftEnv(const DriftEnvConfig& config);

  VectorXd reset() override;
  StepResult step(int action) override;
  int state_dim() const override;

  const Session& session() const { return *session_; }

 private:
  Batch next_batch();

  DriftEnvConfig config_;
  std::uint64_t episode_ = 0;
  Rng cov_rng_{0};
  Rng label_rng_{0};
  drift::DriftPath path_;
  drift::MatrixXd fixed_covariates_;
  std::unique_ptr<Session> session_;
  bool done_ = true;
};

}  // namespace amuse::mdp

#endif  // AMUSE_MDP_HPP_
