#ifndef AMUSE_BASELINES_HPP_
#define AMUSE_BASELINES_HPP_

#include <cstdint>
#include <vector>

#include "amuse/rng.hpp"

namespace amuse::baselines {

enum class DriftLevel { kStable, kWarning, kDrift };

// Drift Detection Method (Gama et al.): tracks the running error
// probability p and std s = sqrt(p(1-p)/n); signals against the recorded
// minimum of p + s. Resets itself after a drift signal.
class Ddm {
 public:
  DriftLevel observe(int error);
  void reset();

  long sample_count() const { return n_; }
  double error_rate() const { return p_; }
  // p_min + s_min; non-increasing between resets once past warm-up
  double min_level() const { return p_min_ + s_min_; }

 private:
  long n_ = 0;
  double p_ = 0.0;
  double p_min_ = 1e12;
  double s_min_ = 1e12;
  static constexpr long kWarmup = 30;
};

// HDDM, A-test variant (Frias-Blanco et al.): compares the cumulative
// error average against the recorded minimum cut point using one-sided
// Hoeffding bounds. Only the increasing-error direction triggers, since
// retraining is pointless when the error falls.
class HddmA {
 public:
  explicit HddmA(double drift_confidence = 0.001,
                 double warning_confidence = 0.005);

  DriftLevel observe(int error);
  void reset();

  long sample_count() const { return total_n_; }

 private:
  bool mean_increased(double confidence) const;

  double alpha_drift_;
  double alpha_warn_;
  double total_c_ = 0.0;
  long total_n_ = 0;
  double c_min_ = 0.0;
  long n_min_ = 0;
};

// Streams a batch's per-example 0/1 errors through a detector in row
// order; update iff the drift level fires anywhere within the batch.
// The detector is reset afterwards when it fired.
template <typename Detector>
int batch_adapter(Detector& detector, const std::vector<int>& errors) {
  bool fired = false;
  for (int e : errors)
    if (detector.observe(e) == DriftLevel::kDrift) fired = true;
  if (fired) detector.reset();
  return fired ? 1 : 0;
}

struct SchedulePolicy {
  enum class Kind { kRandom, kEquallySpaced, kAlways, kNever };
  Kind kind = Kind::kNever;
  double random_prob = 0.0;  // kRandom
  int update_count = 0;      // kEquallySpaced: k updates over 2..T
};

// Action for time t in 2..T under a schedule baseline.
int schedule_action(const SchedulePolicy& policy, int t, int horizon, Rng& rng);

// The k evenly spaced update times over 2..T.
std::vector<int> equally_spaced_times(int k, int horizon);

}  // namespace amuse::baselines

#endif  // AMUSE_BASELINES_HPP_
