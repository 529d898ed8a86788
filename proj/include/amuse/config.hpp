#ifndef AMUSE_CONFIG_HPP_
#define AMUSE_CONFIG_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace amuse::harness {

enum class Scenario { kWellSpecified, kMisspecified };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

// Flat experiment configuration; every field maps 1:1 to a key in the
// commented key=value config file and to a CLI override.
struct ExperimentConfig {
  Scenario scenario = Scenario::kWellSpecified;
  int horizon = 500;        // T
  int batch_size = 10000;   // n
  int num_runs = 50;
  std::vector<double> mu_grid{0.01, 0.05, 0.10, 0.15, 0.20};
  double rho = 0.02;
  std::uint64_t master_seed = 1;
  std::string out_dir = "out";

  // data generating process
  int feature_dim = 5;  // features the modeller believes in
  double drift_step_std = 0.02;
  double drift_jump_prob = 0.01;
  double drift_jump_std = 0.5;
  double extended_term_std = 0.5;  // misspecified-truth extra coefficients

  // classifier
  double fit_ridge = 1e-8;
  double fit_tol = 1e-8;
  int fit_max_iter = 100;

  // PPO initial training
  long train_total_steps = 200000;
  int train_horizon = 200;  // J
  int ppo_rollout = 2048;   // B
  int ppo_minibatch = 64;   // G
  int ppo_epochs = 10;      // K
  double ppo_clip = 0.2;
  double gamma = 0.8;
  double gae_lambda = 0.95;
  double value_coef = 0.5;
  double entropy_coef = 0.0;
  double learning_rate = 3e-4;

  // PPO dynamic phase
  int dyn_rollout = 32;
  int dyn_minibatch = 16;
  int dyn_epochs = 10;
  double dyn_learning_rate = 1e-4;

  // detectors
  double hddm_alpha_drift = 0.001;
  double hddm_alpha_warn = 0.005;

  // rho tuning
  std::vector<double> rho_grid{0.005, 0.01, 0.02, 0.03, 0.04};
  int pilot_runs = 10;

  int threads = 0;  // 0 = hardware concurrency

  void validate() const;  // throws std::invalid_argument
};

// key=value lines, '#' comments, unknown keys rejected.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config_file(const std::string& path);

// Applies a single "key=value" override; throws on unknown key/bad value.
void set_config_key(ExperimentConfig& config, const std::string& key,
                    const std::string& value);

// Round-trippable snapshot of every field.
void write_config(std::ostream& out, const ExperimentConfig& config);

}  // namespace amuse::harness

#endif  // AMUSE_CONFIG_HPP_
