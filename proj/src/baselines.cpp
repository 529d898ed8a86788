#include "amuse/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace amuse::baselines {

DriftLevel Ddm::observe(int error) {
  ++n_;
  p_ += (error - p_) / n_;
  const double s = std::sqrt(p_ * (1.0 - p_) / n_);
  if (n_ < kWarmup) return DriftLevel::kStable;

  if (p_ + s < p_min_ + s_min_) {
    p_min_ = p_;
    s_min_ = s;
  }
  if (p_ + s >= p_min_ + 3.0 * s_min_) {
    reset();
    return DriftLevel::kDrift;
  }
  if (p_ + s >= p_min_ + 2.0 * s_min_) return DriftLevel::kWarning;
  return DriftLevel::kStable;
}

void Ddm::reset() {
  n_ = 0;
  p_ = 0.0;
  p_min_ = 1e12;
  s_min_ = 1e12;
}

HddmA::HddmA(double drift_confidence, double warning_confidence)
    : alpha_drift_(drift_confidence), alpha_warn_(warning_confidence) {
  if (!(drift_confidence > 0.0 && drift_confidence <= warning_confidence &&
        warning_confidence < 1.0))
    throw std::invalid_argument("HddmA: need 0 < alpha_D <= alpha_W < 1");
}

bool HddmA::mean_increased(double confidence) const {
  if (n_min_ == 0 || n_min_ == total_n_) return false;
  const double m =
      static_cast<double>(total_n_ - n_min_) / n_min_ * (1.0 / total_n_);
  const double bound = std::sqrt(m / 2.0 * std::log(2.0 / confidence));
  return total_c_ / total_n_ - c_min_ / n_min_ >= bound;
}

DriftLevel HddmA::observe(int error) {
  ++total_n_;
  total_c_ += error;
  if (n_min_ == 0) {
    n_min_ = total_n_;
    c_min_ = total_c_;
  }

  const double eps_min =
      std::sqrt(1.0 / (2.0 * n_min_) * std::log(1.0 / alpha_drift_));
  const double eps_cur =
      std::sqrt(1.0 / (2.0 * total_n_) * std::log(1.0 / alpha_drift_));
  if (c_min_ / n_min_ + eps_min >= total_c_ / total_n_ + eps_cur) {
    c_min_ = total_c_;
    n_min_ = total_n_;
  }

  if (mean_increased(alpha_drift_)) {
    reset();
    return DriftLevel::kDrift;
  }
  if (mean_increased(alpha_warn_)) return DriftLevel::kWarning;
  return DriftLevel::kStable;
}

void HddmA::reset() {
  total_c_ = 0.0;
  total_n_ = 0;
  c_min_ = 0.0;
  n_min_ = 0;
}

std::vector<int> equally_spaced_times(int k, int horizon) {
  if (k < 0 || k > horizon - 1)
    throw std::invalid_argument("equally_spaced_times: need 0 <= k <= T-1");
  std::vector<int> times;
  times.reserve(k);
  if (k == horizon - 1) {  // degenerate: every step is an update
    for (int t = 2; t <= horizon; ++t) times.push_back(t);
    return times;
  }
  for (int i = 1; i <= k; ++i)
    times.push_back((horizon - 1) * i / (k + 1) + 1);
  return times;
}

int schedule_action(const SchedulePolicy& policy, int t, int horizon,
                    Rng& rng) {
  if (t < 2 || t > horizon)
    throw std::invalid_argument("schedule_action: t outside 2..T");
  switch (policy.kind) {
    case SchedulePolicy::Kind::kAlways:
      return 1;
    case SchedulePolicy::Kind::kNever:
      return 0;
    case SchedulePolicy::Kind::kRandom: {
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      return unif(rng) < policy.random_prob ? 1 : 0;
    }
    case SchedulePolicy::Kind::kEquallySpaced: {
      for (int u : equally_spaced_times(policy.update_count, horizon))
        if (u == t) return 1;
      return 0;
    }
  }
  return 0;
}

}  // namespace amuse::baselines
