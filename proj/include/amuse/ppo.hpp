#ifndef AMUSE_PPO_HPP_
#define AMUSE_PPO_HPP_

#include <functional>
#include <vector>

#include "amuse/mdp.hpp"
#include "amuse/nn.hpp"

namespace amuse::ppo {

using Eigen::VectorXd;

struct Transition {
  VectorXd state;
  int action = 0;
  double log_prob = 0.0;
  double reward = 0.0;
  double value = 0.0;
  bool done = false;
};

struct RolloutBuffer {
  std::vector<Transition> transitions;
  VectorXd advantages;  // filled by compute_gae
  VectorXd returns;
  bool finalized = false;
  double bootstrap_value = 0.0;  // V of the state after the last transition
  std::vector<double> episode_rewards;  // episodes completed in this rollout
  std::vector<int> episode_lengths;

  int size() const { return static_cast<int>(transitions.size()); }
};

struct PpoConfig {
  int rollout_steps = 2048;  // B
  int minibatch_size = 64;   // G
  int epochs = 10;           // K
  double clip_eps = 0.2;
  double gamma = 0.8;
  double gae_lambda = 0.95;
  double value_coef = 0.5;
  double entropy_coef = 0.0;
  double learning_rate = 3e-4;
  bool normalize_advantages = true;
};

struct ActorCritic {
  nn::Mlp actor;   // state -> 2 logits
  nn::Mlp critic;  // state -> scalar value
};

ActorCritic make_actor_critic(int state_dim, Rng& rng,
                              const std::vector<int>& hidden = {64, 64});

enum class ActMode { kProbabilistic, kDeterministic };

// Deployment action selection: sample from the policy's softmax, or
// threshold P(a=1) when deterministic.
int act(const nn::Mlp& actor, const VectorXd& state, ActMode mode, Rng& rng,
        double threshold = 0.5);

// Carries the environment state across rollout boundaries so episodes
// are not truncated between iterations.
struct RolloutCursor {
  VectorXd state;
  bool fresh = true;
  double episode_reward = 0.0;
  int episode_length = 0;
};

// Runs the policy in `env` for exactly B steps, restarting episodes on
// done. The buffer's bootstrap_value holds V(s) for the state following
// the final transition (0 if that transition ended an episode).
RolloutBuffer collect_rollout(mdp::Env& env, const ActorCritic& nets, int B,
                              Rng& rng, RolloutCursor* cursor = nullptr);

// GAE(gamma, lambda) over the buffer; advantages are normalized to zero
// mean / unit variance afterwards when `normalize` is set. Marks the
// buffer finalized.
void compute_gae(RolloutBuffer& buffer, double gamma, double lambda,
                 double bootstrap_value, bool normalize = true);

struct UpdateStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
};

// K epochs of clipped-surrogate minibatch updates.
UpdateStats ppo_update(ActorCritic& nets, nn::AdamState& actor_opt,
                       nn::AdamState& critic_opt, const RolloutBuffer& buffer,
                       const PpoConfig& config, Rng& rng);

struct IterationLog {
  int iteration = 0;
  double mean_episode_reward = 0.0;
  double mean_episode_length = 0.0;
  UpdateStats stats;
};

// Alg. 2: repeated collect -> GAE -> clipped update until `total_steps`
// environment steps have been consumed. total_steps must cover at least
// one full rollout.
ActorCritic train_static(mdp::Env& env, const PpoConfig& config,
                         long total_steps, Rng& rng,
                         std::vector<IterationLog>* curve = nullptr);

// Alg. 3: deployment-time policy updating. Pulls Delta_2..Delta_T in
// order from `next_batch` and drives `session` over them, sampling
// actions probabilistically and running a PPO update every
// config.rollout_steps observed transitions. A trailing partial buffer
// is discarded.
struct DynamicResult {
  ActorCritic nets;
  mdp::UtilityLedger ledger;
  int policy_updates = 0;
};

DynamicResult dynamic_update_loop(const std::function<drift::Batch()>& next_batch,
                                  int num_batches, mdp::Session& session,
                                  const ActorCritic& pretrained,
                                  const PpoConfig& config, Rng& rng);

}  // namespace amuse::ppo

#endif  // AMUSE_PPO_HPP_
