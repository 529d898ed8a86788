#ifndef AMUSE_HARNESS_HPP_
#define AMUSE_HARNESS_HPP_

#include <map>
#include <string>
#include <vector>

#include "amuse/config.hpp"
#include "amuse/mdp.hpp"
#include "amuse/ppo.hpp"

namespace amuse::harness {

// Resolved scenario: the true data/drift processes the evaluation stream
// uses, and the assumed ones the simulating environment trains against.
// Under misspecification the truth gains interaction/quadratic/extra
// covariate terms while the assumed process underestimates drift
// (half the step std, no jumps) and is seeded from a logistic fit to an
// exploratory initial dataset.
struct ScenarioSetup {
  drift::DgpParams theta_true;
  drift::DriftConfig phi_true;
  drift::DgpParams theta_assumed;
  drift::DriftConfig phi_assumed;
  classifier::FitConfig fit;
};

ScenarioSetup make_scenario(const ExperimentConfig& config);

// Replayable evaluation stream for one run: every strategy re-derives
// the identical batch sequence from the run seed; the rolling digest
// proves it consumed byte-identical data.
class EvalStream {
 public:
  EvalStream(const ScenarioSetup& setup, const ExperimentConfig& config,
             int run);

  drift::Batch next();  // Delta_1 on the first call, then Delta_2..Delta_T
  std::uint64_t digest() const { return digest_; }
  const drift::DriftPath& path() const { return path_; }

 private:
  drift::DriftPath path_;
  Rng cov_rng_;
  Rng label_rng_;
  int cov_dim_;
  int batch_size_;
  int t_ = 0;
  std::uint64_t digest_ = 1469598103934665603ULL;  // FNV-1a offset basis
};

struct StrategyTrace {
  mdp::UtilityLedger ledger;
  std::vector<double> rewards;
  std::uint64_t stream_digest = 0;
  int update_count = 0;  // updates taken at t >= 2
};

struct ResultRow {
  std::string strategy;
  double mu = 0.0;
  double mean_utility = 0.0;
  double stderr_utility = 0.0;
  double mean_updates = 0.0;
};

struct ComparisonResult {
  std::vector<ResultRow> rows;
  // run-indexed traces per strategy, strategy order fixed
  std::vector<std::string> strategy_names;
  std::map<std::string, std::vector<StrategyTrace>> traces;
  double calibrated_random_prob = 0.0;
  int calibrated_spacing = 0;
};

// Trains the PPO agent in the simulating environment (Alg. 2) for the
// configured budget; rho may be overridden for tuning sweeps.
ppo::ActorCritic train_agent(const ExperimentConfig& config,
                             std::vector<ppo::IterationLog>* curve = nullptr,
                             double rho_override = -1.0);

void save_checkpoint(const std::string& path, const ppo::ActorCritic& nets);
ppo::ActorCritic load_checkpoint(const std::string& path);

// Full benchmark: static and dynamic AMUSE plus the six baselines on
// identical per-run batch streams; random/equally-spaced calibrated from
// static AMUSE's realized mean update count; the mu grid is applied post
// hoc to the stored ledgers.
ComparisonResult run_comparison(const ExperimentConfig& config,
                                const ppo::ActorCritic& nets);

struct RhoPilotRow {
  double rho = 0.0;
  double mu = 0.0;
  double mean_utility = 0.0;
};

struct RhoTuneResult {
  double chosen_rho = 0.0;
  std::vector<RhoPilotRow> pilot_table;
  std::map<double, std::vector<ppo::IterationLog>> curves;
};

// Trains one agent per rho on the grid, evaluates each on pilot runs of
// the training environment across the mu grid, and recommends the rho
// winning the most mu values (ties toward smaller rho).
RhoTuneResult tune_rho(const ExperimentConfig& config);

// Writes results.csv, results.md, per-run trace CSVs, the reward-curve
// CSV and a config snapshot under config.out_dir.
void emit_outputs(const ExperimentConfig& config,
                  const ComparisonResult& result,
                  const std::vector<ppo::IterationLog>& curve);

// Per-rho reward curves, the pilot utility table and the recommendation
// under config.out_dir.
void emit_tune_outputs(const ExperimentConfig& config,
                       const RhoTuneResult& result);

// Drift-path and batch-summary traces only (the `simulate` subcommand).
void run_simulate(const ExperimentConfig& config);

// Finite-difference self-test of the actor/critic gradients; returns
// true when every parameter matches central differences within 1e-4
// relative error.
bool run_gradcheck(std::ostream& log);

}  // namespace amuse::harness

#endif  // AMUSE_HARNESS_HPP_
