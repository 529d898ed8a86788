#include "amuse/ppo.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace amuse::ppo {

ActorCritic make_actor_critic(int state_dim, Rng& rng,
                              const std::vector<int>& hidden) {
  std::vector<int> actor_dims{state_dim};
  actor_dims.insert(actor_dims.end(), hidden.begin(), hidden.end());
  actor_dims.push_back(2);
  std::vector<int> critic_dims{state_dim};
  critic_dims.insert(critic_dims.end(), hidden.begin(), hidden.end());
  critic_dims.push_back(1);

  ActorCritic nets;
  nets.actor = nn::make_mlp(actor_dims, rng, 0.01);
  nets.critic = nn::make_mlp(critic_dims, rng, 1.0);
  return nets;
}

namespace {

inline double prob_update(const nn::Mlp& actor, const VectorXd& state) {
  const VectorXd logits = nn::forward(actor, state);
  return nn::softmax_logprob_entropy(Eigen::Vector2d(logits[0], logits[1]), 1)
      .probs[1];
}

}  // namespace

int act(const nn::Mlp& actor, const VectorXd& state, ActMode mode, Rng& rng,
        double threshold) {
  const double p1 = prob_update(actor, state);
  if (mode == ActMode::kDeterministic) return p1 > threshold ? 1 : 0;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return unif(rng) < p1 ? 1 : 0;
}

RolloutBuffer collect_rollout(mdp::Env& env, const ActorCritic& nets, int B,
                              Rng& rng, RolloutCursor* cursor) {
  if (B < 1) throw std::invalid_argument("collect_rollout: B < 1");
  RolloutCursor local;
  RolloutCursor& cur = cursor ? *cursor : local;
  if (cur.fresh) {
    cur.state = env.reset();
    cur.fresh = false;
    cur.episode_reward = 0.0;
    cur.episode_length = 0;
  }

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  RolloutBuffer buffer;
  buffer.transitions.reserve(B);
  for (int i = 0; i < B; ++i) {
    const VectorXd logits2 = nn::forward(nets.actor, cur.state);
    const Eigen::Vector2d logits(logits2[0], logits2[1]);
    const double p1 = nn::softmax_logprob_entropy(logits, 1).probs[1];
    const int action = unif(rng) < p1 ? 1 : 0;
    const auto soft = nn::softmax_logprob_entropy(logits, action);
    const double value = nn::forward(nets.critic, cur.state)[0];

    mdp::StepResult res = env.step(action);

    Transition tr;
    tr.state = cur.state;
    tr.action = action;
    tr.log_prob = soft.log_prob;
    tr.reward = res.reward;
    tr.value = value;
    tr.done = res.done;
    buffer.transitions.push_back(std::move(tr));

    cur.episode_reward += res.reward;
    ++cur.episode_length;
    if (res.done) {
      buffer.episode_rewards.push_back(cur.episode_reward);
      buffer.episode_lengths.push_back(cur.episode_length);
      cur.episode_reward = 0.0;
      cur.episode_length = 0;
      cur.state = env.reset();
    } else {
      cur.state = res.state;
    }
  }
  buffer.bootstrap_value =
      buffer.transitions.back().done ? 0.0
                                     : nn::forward(nets.critic, cur.state)[0];
  return buffer;
}

void compute_gae(RolloutBuffer& buffer, double gamma, double lambda,
                 double bootstrap_value, bool normalize) {
  if (buffer.finalized) throw std::logic_error("compute_gae: already finalized");
  const int B = buffer.size();
  if (B == 0) throw std::invalid_argument("compute_gae: empty buffer");
  buffer.advantages.resize(B);
  buffer.returns.resize(B);
  double next_adv = 0.0;
  double next_value = bootstrap_value;
  for (int t = B - 1; t >= 0; --t) {
    const Transition& tr = buffer.transitions[t];
    const double not_done = tr.done ? 0.0 : 1.0;
    const double delta = tr.reward + gamma * next_value * not_done - tr.value;
    next_adv = delta + gamma * lambda * not_done * next_adv;
    buffer.advantages[t] = next_adv;
    buffer.returns[t] = next_adv + tr.value;
    next_value = tr.value;
  }
  if (normalize) {
    const double mean = buffer.advantages.mean();
    const double var =
        (buffer.advantages.array() - mean).square().sum() / B;
    const double std = std::sqrt(var);
    buffer.advantages =
        (buffer.advantages.array() - mean) / (std + 1e-8);
  }
  buffer.finalized = true;
}

UpdateStats ppo_update(ActorCritic& nets, nn::AdamState& actor_opt,
                       nn::AdamState& critic_opt, const RolloutBuffer& buffer,
                       const PpoConfig& config, Rng& rng) {
  if (!buffer.finalized)
    throw std::logic_error("ppo_update: buffer not finalized");
  const int B = buffer.size();
  const int G = std::min(config.minibatch_size, B);

  std::vector<int> indices(B);
  std::iota(indices.begin(), indices.end(), 0);

  UpdateStats stats;
  int stat_batches = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(indices.begin(), indices.end(), rng);
    for (int start = 0; start < B; start += G) {
      const int end = std::min(start + G, B);
      const int m = end - start;

      nn::Gradients actor_grads = nn::zero_like(nets.actor);
      nn::Gradients critic_grads = nn::zero_like(nets.critic);
      double policy_loss = 0.0, value_loss = 0.0, entropy_sum = 0.0;
      double unclipped_sum = 0.0, clipped_sum = 0.0;

      for (int k = start; k < end; ++k) {
        const Transition& tr = buffer.transitions[indices[k]];
        const double adv = buffer.advantages[indices[k]];
        const double ret = buffer.returns[indices[k]];

        nn::ForwardCache actor_cache;
        const VectorXd logits2 =
            nn::forward(nets.actor, tr.state, actor_cache);
        const Eigen::Vector2d logits(logits2[0], logits2[1]);
        const auto soft = nn::softmax_logprob_entropy(logits, tr.action);
        const double ratio = std::exp(soft.log_prob - tr.log_prob);
        const double clipped_ratio =
            std::clamp(ratio, 1.0 - config.clip_eps, 1.0 + config.clip_eps);
        const double surr1 = ratio * adv;
        const double surr2 = clipped_ratio * adv;
        const double surr = std::min(surr1, surr2);
        unclipped_sum += surr1;
        clipped_sum += surr;
        policy_loss += -surr;
        entropy_sum += soft.entropy;

        Eigen::Vector2d dlogits = Eigen::Vector2d::Zero();
        if (surr1 <= surr2) {
          // d(-surr1)/dlogits = -adv * ratio * (onehot(a) - probs)
          Eigen::Vector2d dlp = -soft.probs;
          dlp[tr.action] += 1.0;
          dlogits += (-adv * ratio) * dlp;
        }
        if (config.entropy_coef != 0.0) {
          for (int a = 0; a < 2; ++a) {
            const double logp =
                a == 0 ? std::log(std::max(soft.probs[0], 1e-300))
                       : std::log(std::max(soft.probs[1], 1e-300));
            dlogits[a] += config.entropy_coef * soft.probs[a] *
                          (logp + soft.entropy);
          }
        }
        dlogits /= m;
        nn::backward(nets.actor, actor_cache,
                     VectorXd(Eigen::Map<const VectorXd>(dlogits.data(), 2)),
                     actor_grads);

        nn::ForwardCache critic_cache;
        const double v = nn::forward(nets.critic, tr.state, critic_cache)[0];
        const double verr = v - ret;
        value_loss += config.value_coef * verr * verr;
        VectorXd dv(1);
        dv[0] = config.value_coef * 2.0 * verr / m;
        nn::backward(nets.critic, critic_cache, dv, critic_grads);
      }
      // min structure: clipped objective can never exceed the unclipped one
      assert(clipped_sum <= unclipped_sum + 1e-9);

      nn::adam_step(nets.actor, actor_grads, actor_opt);
      nn::adam_step(nets.critic, critic_grads, critic_opt);

      stats.policy_loss += policy_loss / m;
      stats.value_loss += value_loss / m;
      stats.entropy += entropy_sum / m;
      ++stat_batches;
    }
  }
  if (stat_batches > 0) {
    stats.policy_loss /= stat_batches;
    stats.value_loss /= stat_batches;
    stats.entropy /= stat_batches;
  }
  return stats;
}

ActorCritic train_static(mdp::Env& env, const PpoConfig& config,
                         long total_steps, Rng& rng,
                         std::vector<IterationLog>* curve) {
  if (total_steps < config.rollout_steps)
    throw std::invalid_argument(
        "train_static: total_steps must cover at least one rollout");
  if (config.minibatch_size > config.rollout_steps)
    throw std::invalid_argument("train_static: minibatch size exceeds B");

  ActorCritic nets = make_actor_critic(env.state_dim(), rng);
  nn::AdamState actor_opt = nn::make_adam(nets.actor, config.learning_rate);
  nn::AdamState critic_opt = nn::make_adam(nets.critic, config.learning_rate);

  RolloutCursor cursor;
  const long iterations = total_steps / config.rollout_steps;
  double last_mean_reward = 0.0, last_mean_length = 0.0;
  for (long it = 0; it < iterations; ++it) {
    RolloutBuffer buffer =
        collect_rollout(env, nets, config.rollout_steps, rng, &cursor);
    compute_gae(buffer, config.gamma, config.gae_lambda, buffer.bootstrap_value,
                config.normalize_advantages);
    UpdateStats stats = ppo_update(nets, actor_opt, critic_opt, buffer, config, rng);

    if (!buffer.episode_rewards.empty()) {
      last_mean_reward = std::accumulate(buffer.episode_rewards.begin(),
                                         buffer.episode_rewards.end(), 0.0) /
                         buffer.episode_rewards.size();
      last_mean_length = std::accumulate(buffer.episode_lengths.begin(),
                                         buffer.episode_lengths.end(), 0.0) /
                         buffer.episode_lengths.size();
    }
    if (curve)
      curve->push_back({static_cast<int>(it) + 1, last_mean_reward,
                        last_mean_length, stats});
  }
  return nets;
}

DynamicResult dynamic_update_loop(const std::function<drift::Batch()>& next_batch,
                                  int num_batches, mdp::Session& session,
                                  const ActorCritic& pretrained,
                                  const PpoConfig& config, Rng& rng) {
  DynamicResult result;
  result.nets = pretrained;
  nn::AdamState actor_opt = nn::make_adam(result.nets.actor, config.learning_rate);
  nn::AdamState critic_opt = nn::make_adam(result.nets.critic, config.learning_rate);

  RolloutBuffer buffer;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < num_batches; ++i) {
    const drift::Batch batch = next_batch();
    const VectorXd& state = session.observe(batch);

    // counter reached B on the previous step: update now that the next
    // state (and its value bootstrap) is available
    if (buffer.size() == config.rollout_steps) {
      compute_gae(buffer, config.gamma, config.gae_lambda,
                  nn::forward(result.nets.critic, state)[0],
                  config.normalize_advantages);
      ppo_update(result.nets, actor_opt, critic_opt, buffer, config, rng);
      ++result.policy_updates;
      buffer = RolloutBuffer{};
    }

    const VectorXd logits2 = nn::forward(result.nets.actor, state);
    const Eigen::Vector2d logits(logits2[0], logits2[1]);
    const double p1 = nn::softmax_logprob_entropy(logits, 1).probs[1];
    const int action = unif(rng) < p1 ? 1 : 0;
    const auto soft = nn::softmax_logprob_entropy(logits, action);
    const double value = nn::forward(result.nets.critic, state)[0];
    const double reward = session.act(action);

    Transition tr;
    tr.state = state;
    tr.action = action;
    tr.log_prob = soft.log_prob;
    tr.reward = reward;
    tr.value = value;
    tr.done = false;
    buffer.transitions.push_back(std::move(tr));
  }
  // a buffer filled exactly at the end of the stream still counts: the
  // deployment ends here, so treat the last transition as terminal
  if (buffer.size() == config.rollout_steps) {
    buffer.transitions.back().done = true;
    compute_gae(buffer, config.gamma, config.gae_lambda, 0.0,
                config.normalize_advantages);
    ppo_update(result.nets, actor_opt, critic_opt, buffer, config, rng);
    ++result.policy_updates;
  }
  result.ledger = session.ledger();
  return result;
}

}  // namespace amuse::ppo
