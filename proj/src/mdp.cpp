#include "amuse/mdp.hpp"

#include <stdexcept>

namespace amuse::mdp {

void apply_action(UpdateTracker& tracker, int t, int action) {
  if (t != tracker.current_time() + 1)
    throw std::logic_error("apply_action: non-sequential time index");
  if (action != 0 && action != 1)
    throw std::invalid_argument("apply_action: action must be 0 or 1");
  if (action == 1) tracker.last_update = t;
  tracker.action_history.push_back(action);
}

double cumulative_utility(const UtilityLedger& ledger, double mu) {
  double total = 0.0;
  for (double eta : ledger.utilities) total += eta;
  // initial mandatory fit at t = 1 is uncharged
  for (std::size_t i = 1; i < ledger.actions.size(); ++i)
    total -= mu * ledger.actions[i];
  return total;
}

VectorXd build_state(const std::vector<MetricSet>& recent,
                     double acc_at_last_update, const LogisticModel& model,
                     int t, const UpdateTracker& tracker, int horizon) {
  if (recent.empty()) throw std::invalid_argument("build_state: empty window");
  if (t < 1) throw std::invalid_argument("build_state: t < 1");

  const int d = model.dim();
  VectorXd s(state_dim(d));
  int k = 0;
  for (int i = 0; i < kAccWindow; ++i) {
    const std::size_t idx = std::min<std::size_t>(i, recent.size() - 1);
    s[k++] = recent[idx].accuracy;
  }
  s[k++] = acc_at_last_update;
  s[k++] = recent.front().precision;
  s[k++] = recent.front().recall;
  s[k++] = recent.front().cross_entropy;
  s[k++] = model.intercept;
  for (int j = 0; j < d; ++j) s[k++] = model.weights[j];
  s[k++] = static_cast<double>(t - tracker.last_update) / horizon;
  return s;
}

double compute_reward(const Batch& batch, const LogisticModel& candidate,
                      const LogisticModel& incumbent, double rho, int action) {
  if (action == 0) return 0.0;
  const double eta_new = classifier::evaluate(candidate, batch).accuracy;
  const double eta_old = classifier::evaluate(incumbent, batch).accuracy;
  return eta_new - eta_old - rho;
}

Session::Session(const Batch& batch1, const FitConfig& fit, int horizon,
                 double rho)
    : fit_(fit), horizon_(horizon), rho_(rho) {
  if (horizon < 2) throw std::invalid_argument("Session: horizon < 2");
  incumbent_ = classifier::fit(batch1, fit_);
  ++fit_count_;
  MetricSet m = classifier::evaluate(incumbent_, batch1);
  recent_.push_back(m);
  acc_at_last_update_ = m.accuracy;
  ledger_.utilities.push_back(m.accuracy);
  ledger_.actions.push_back(1);
  rewards_.push_back(0.0);  // r_1 = 0 by convention
  state_ = build_state(recent_, acc_at_last_update_, incumbent_, 1, tracker_,
                       horizon_);
}

const VectorXd& Session::observe(const Batch& batch) {
  if (pending_) throw std::logic_error("Session::observe: act() not called");
  if (t_ >= horizon_) throw std::logic_error("Session::observe: past horizon");
  ++t_;
  current_batch_ = batch;
  MetricSet m = classifier::evaluate(incumbent_, current_batch_);
  recent_.insert(recent_.begin(), m);
  if (static_cast<int>(recent_.size()) > kAccWindow) recent_.pop_back();

  const VectorXd p = classifier::predict_proba(incumbent_, batch.covariates);
  errors_.resize(batch.size());
  for (int i = 0; i < batch.size(); ++i) {
    const bool yhat = p[i] >= 0.5;
    const bool y = batch.labels[i] > 0.5;
    errors_[i] = yhat == y ? 0 : 1;
  }

  state_ = build_state(recent_, acc_at_last_update_, incumbent_, t_, tracker_,
                       horizon_);
  pending_ = true;
  return state_;
}

double Session::act(int action) {
  if (!pending_) throw std::logic_error("Session::act: no batch observed");
  double reward = 0.0;
  if (action == 1) {
    LogisticModel candidate = classifier::fit(current_batch_, fit_);
    ++fit_count_;
    MetricSet m = classifier::evaluate(candidate, current_batch_);
    reward = m.accuracy - recent_.front().accuracy - rho_;
    incumbent_ = candidate;
    acc_at_last_update_ = m.accuracy;
    recent_.front() = m;  // window tracks the deployed model per step
  }
  apply_action(tracker_, t_, action);
  ledger_.utilities.push_back(recent_.front().accuracy);
  ledger_.actions.push_back(action);
  rewards_.push_back(reward);
  pending_ = false;
  return reward;
}

DriftEnv::DriftEnv(const DriftEnvConfig& config) : config_(config) {
  if (config_.horizon < 2) throw std::invalid_argument("DriftEnv: horizon < 2");
  if (config_.batch_size < 2)
    throw std::invalid_argument("DriftEnv: batch_size < 2");
}

int DriftEnv::state_dim() const { return mdp::state_dim(config_.fit.feature_dim); }

Batch DriftEnv::next_batch() {
  const int t = session_->time() + 1;
  if (config_.resample_covariates) {
    drift::MatrixXd X = drift::sample_covariates(
        config_.batch_size, static_cast<int>(fixed_covariates_.cols()), cov_rng_);
    return drift::generate_batch(path_.params[t - 1], X, label_rng_, t);
  }
  return drift::generate_batch(path_.params[t - 1], fixed_covariates_,
                               label_rng_, t);
}

VectorXd DriftEnv::reset() {
  ++episode_;
  Rng drift_rng = make_rng(config_.seed, "drift", episode_);
  cov_rng_ = make_rng(config_.seed, "covariates", episode_);
  label_rng_ = make_rng(config_.seed, "labels", episode_);

  path_ = drift::generate_drift_path(config_.theta1, config_.phi,
                                     config_.horizon, drift_rng);
  fixed_covariates_ = drift::sample_covariates(
      config_.batch_size, config_.theta1.covariate_dim(), cov_rng_);
  Batch batch1 =
      drift::generate_batch(path_.params[0], fixed_covariates_, label_rng_, 1);
  session_ = std::make_unique<Session>(batch1, config_.fit, config_.horizon,
                                       config_.rho);
  done_ = false;
  return session_->observe(next_batch());
}

StepResult DriftEnv::step(int action) {
  if (done_) throw std::logic_error("DriftEnv::step: episode finished");
  const double reward = session_->act(action);
  if (session_->time() == config_.horizon) {
    done_ = true;
    return {session_->state(), reward, true};
  }
  return {session_->observe(next_batch()), reward, false};
}

}  // namespace amuse::mdp
