#include "amuse/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "amuse/baselines.hpp"

namespace amuse::harness {

namespace fs = std::filesystem;

ScenarioSetup make_scenario(const ExperimentConfig& config) {
  config.validate();
  ScenarioSetup setup;
  setup.fit.feature_dim = config.feature_dim;
  setup.fit.ridge = config.fit_ridge;
  setup.fit.tol = config.fit_tol;
  setup.fit.max_iter = config.fit_max_iter;

  Rng theta_rng = make_rng(config.master_seed, "theta");
  std::normal_distribution<double> normal(0.0, 1.0);
  setup.theta_true.intercept = 0.0;
  setup.theta_true.coefficients.resize(config.feature_dim);
  for (int j = 0; j < config.feature_dim; ++j)
    setup.theta_true.coefficients[j] = normal(theta_rng);

  setup.phi_true.step_std = config.drift_step_std;
  setup.phi_true.jump_prob = config.drift_jump_prob;
  setup.phi_true.jump_std = config.drift_jump_std;

  if (config.scenario == Scenario::kWellSpecified) {
    setup.theta_assumed = setup.theta_true;
    setup.phi_assumed = setup.phi_true;
    return setup;
  }

  // misspecified truth: interaction x1*x2, quadratic x3^2, extra x6
  Eigen::Vector3d ext;
  for (int j = 0; j < 3; ++j)
    ext[j] = config.extended_term_std * normal(theta_rng);
  setup.theta_true.extended_terms = ext;

  // the modeller's DGP estimate: a plain logistic fit to an exploratory
  // initial dataset, ignoring the additional terms
  Rng cov_rng = make_rng(config.master_seed, "explore_cov");
  Rng label_rng = make_rng(config.master_seed, "explore_label");
  drift::MatrixXd X = drift::sample_covariates(
      config.batch_size, setup.theta_true.covariate_dim(), cov_rng);
  drift::Batch pilot = drift::generate_batch(setup.theta_true, X, label_rng, 1);
  classifier::LogisticModel assumed_fit = classifier::fit(pilot, setup.fit);
  setup.theta_assumed.intercept = assumed_fit.intercept;
  setup.theta_assumed.coefficients = assumed_fit.weights;

  // underestimated drift: half the step std, no sudden drift
  setup.phi_assumed.step_std = config.drift_step_std / 2.0;
  setup.phi_assumed.jump_prob = 0.0;
  setup.phi_assumed.jump_std = config.drift_jump_std;
  return setup;
}

namespace {

inline void fnv_accumulate(std::uint64_t& h, const double* data,
                           std::size_t count) {
  const auto* bytes = reinterpret_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < count * sizeof(double); ++i) {
    h ^= bytes[i];
    h *= 1099511628211ULL;
  }
}

}  // namespace

EvalStream::EvalStream(const ScenarioSetup& setup,
                       const ExperimentConfig& config, int run)
    : cov_rng_(make_rng(config.master_seed, "eval_cov", run)),
      label_rng_(make_rng(config.master_seed, "eval_label", run)),
      cov_dim_(setup.theta_true.covariate_dim()),
      batch_size_(config.batch_size) {
  Rng drift_rng = make_rng(config.master_seed, "eval_drift", run);
  path_ = drift::generate_drift_path(setup.theta_true, setup.phi_true,
                                     config.horizon, drift_rng);
}

drift::Batch EvalStream::next() {
  if (t_ >= path_.horizon()) throw std::logic_error("EvalStream: exhausted");
  ++t_;
  drift::MatrixXd X = drift::sample_covariates(batch_size_, cov_dim_, cov_rng_);
  drift::Batch batch =
      drift::generate_batch(path_.params[t_ - 1], X, label_rng_, t_);
  fnv_accumulate(digest_, batch.covariates.data(), batch.covariates.size());
  fnv_accumulate(digest_, batch.labels.data(), batch.labels.size());
  return batch;
}

namespace {

StrategyTrace trace_from(const mdp::Session& session, std::uint64_t digest) {
  StrategyTrace trace;
  trace.ledger = session.ledger();
  trace.rewards = session.rewards();
  trace.stream_digest = digest;
  for (std::size_t t = 1; t < trace.ledger.actions.size(); ++t)
    trace.update_count += trace.ledger.actions[t];
  return trace;
}

// Shared evaluation loop; the strategy sees the session after observe()
// and returns a_t.
StrategyTrace run_strategy(
    const ScenarioSetup& setup, const ExperimentConfig& config, int run,
    const std::function<int(mdp::Session&, int)>& decide) {
  EvalStream stream(setup, config, run);
  mdp::Session session(stream.next(), setup.fit, config.horizon, config.rho);
  for (int t = 2; t <= config.horizon; ++t) {
    session.observe(stream.next());
    session.act(decide(session, t));
  }
  return trace_from(session, stream.digest());
}

StrategyTrace run_dynamic_amuse(const ScenarioSetup& setup,
                                const ExperimentConfig& config, int run,
                                const ppo::ActorCritic& nets) {
  EvalStream stream(setup, config, run);
  mdp::Session session(stream.next(), setup.fit, config.horizon, config.rho);
  ppo::PpoConfig dyn;
  dyn.rollout_steps = config.dyn_rollout;
  dyn.minibatch_size = config.dyn_minibatch;
  dyn.epochs = config.dyn_epochs;
  dyn.clip_eps = config.ppo_clip;
  dyn.gamma = config.gamma;
  dyn.gae_lambda = config.gae_lambda;
  dyn.value_coef = config.value_coef;
  dyn.entropy_coef = config.entropy_coef;
  dyn.learning_rate = config.dyn_learning_rate;
  Rng rng = make_rng(config.master_seed, "strategy/amuse_dynamic", run);
  ppo::dynamic_update_loop([&stream] { return stream.next(); },
                           config.horizon - 1, session, nets, dyn, rng);
  return trace_from(session, stream.digest());
}

void parallel_for_runs(int num_runs, int threads,
                       const std::function<void(int)>& body) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  threads = std::min(threads, num_runs);
  if (threads <= 1) {
    for (int r = 0; r < num_runs; ++r) body(r);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int r = next.fetch_add(1); r < num_runs; r = next.fetch_add(1))
          body(r);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

double sample_stderr(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n));
}

}  // namespace

ppo::ActorCritic train_agent(const ExperimentConfig& config,
                             std::vector<ppo::IterationLog>* curve,
                             double rho_override) {
  ScenarioSetup setup = make_scenario(config);
  mdp::DriftEnvConfig env_config;
  env_config.theta1 = setup.theta_assumed;
  env_config.phi = setup.phi_assumed;
  env_config.horizon = config.train_horizon;
  env_config.batch_size = config.batch_size;
  env_config.resample_covariates = false;  // training reuses X_1
  env_config.fit = setup.fit;
  env_config.rho = rho_override >= 0.0 ? rho_override : config.rho;
  env_config.seed = derive_seed(config.master_seed, "train_env");
  mdp::DriftEnv env(env_config);

  ppo::PpoConfig ppo_config;
  ppo_config.rollout_steps = config.ppo_rollout;
  ppo_config.minibatch_size = config.ppo_minibatch;
  ppo_config.epochs = config.ppo_epochs;
  ppo_config.clip_eps = config.ppo_clip;
  ppo_config.gamma = config.gamma;
  ppo_config.gae_lambda = config.gae_lambda;
  ppo_config.value_coef = config.value_coef;
  ppo_config.entropy_coef = config.entropy_coef;
  ppo_config.learning_rate = config.learning_rate;

  Rng rng = make_rng(config.master_seed, "ppo");
  return ppo::train_static(env, ppo_config, config.train_total_steps, rng,
                           curve);
}

void save_checkpoint(const std::string& path, const ppo::ActorCritic& nets) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
  out << "amuse-checkpoint 1\n";
  nn::save_net(out, nets.actor);
  nn::save_net(out, nets.critic);
  if (!out) throw std::runtime_error("checkpoint write failed: " + path);
}

ppo::ActorCritic load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "amuse-checkpoint" || version != 1)
    throw std::runtime_error("unrecognized checkpoint format: " + path);
  ppo::ActorCritic nets;
  nets.actor = nn::load_net(in);
  nets.critic = nn::load_net(in);
  return nets;
}

ComparisonResult run_comparison(const ExperimentConfig& config,
                                const ppo::ActorCritic& nets) {
  ScenarioSetup setup = make_scenario(config);
  const int runs = config.num_runs;
  if (runs == 1)
    std::cerr << "warning: runs = 1, standard errors reported as 0\n";

  ComparisonResult result;
  result.strategy_names = {"amuse_dynamic", "amuse_static", "ddm",
                           "hddm",          "random",       "equally_spaced",
                           "always",        "never"};
  for (const auto& name : result.strategy_names)
    result.traces[name].resize(runs);

  // phase 1: AMUSE itself; its realized update counts calibrate the
  // random and equally-spaced baselines
  parallel_for_runs(runs, config.threads, [&](int run) {
    Rng rng = make_rng(config.master_seed, "strategy/amuse_static", run);
    result.traces["amuse_static"][run] =
        run_strategy(setup, config, run, [&](mdp::Session& session, int) {
          return ppo::act(nets.actor, session.state(),
                          ppo::ActMode::kProbabilistic, rng);
        });
    result.traces["amuse_dynamic"][run] =
        run_dynamic_amuse(setup, config, run, nets);
  });

  double mean_static_updates = 0.0;
  for (const auto& trace : result.traces["amuse_static"])
    mean_static_updates += trace.update_count;
  mean_static_updates /= runs;
  result.calibrated_random_prob =
      std::clamp(mean_static_updates / (config.horizon - 1), 0.0, 1.0);
  result.calibrated_spacing = std::min<int>(
      static_cast<int>(std::floor(mean_static_updates)), config.horizon - 1);

  // phase 2: baselines on the identical streams
  parallel_for_runs(runs, config.threads, [&](int run) {
    const std::uint64_t expect =
        result.traces["amuse_static"][run].stream_digest;
    auto check = [&](const StrategyTrace& trace) {
      if (trace.stream_digest != expect)
        throw std::runtime_error("evaluation stream digest mismatch");
      return trace;
    };

    {
      baselines::Ddm detector;
      result.traces["ddm"][run] = check(
          run_strategy(setup, config, run, [&](mdp::Session& session, int) {
            return baselines::batch_adapter(detector,
                                            session.incumbent_errors());
          }));
    }
    {
      baselines::HddmA detector(config.hddm_alpha_drift,
                                config.hddm_alpha_warn);
      result.traces["hddm"][run] = check(
          run_strategy(setup, config, run, [&](mdp::Session& session, int) {
            return baselines::batch_adapter(detector,
                                            session.incumbent_errors());
          }));
    }
    {
      baselines::SchedulePolicy policy;
      policy.kind = baselines::SchedulePolicy::Kind::kRandom;
      policy.random_prob = result.calibrated_random_prob;
      Rng rng = make_rng(config.master_seed, "strategy/random", run);
      result.traces["random"][run] = check(
          run_strategy(setup, config, run, [&](mdp::Session&, int t) {
            return baselines::schedule_action(policy, t, config.horizon, rng);
          }));
    }
    {
      baselines::SchedulePolicy policy;
      policy.kind = baselines::SchedulePolicy::Kind::kEquallySpaced;
      policy.update_count = result.calibrated_spacing;
      Rng rng = make_rng(config.master_seed, "strategy/equally_spaced", run);
      result.traces["equally_spaced"][run] = check(
          run_strategy(setup, config, run, [&](mdp::Session&, int t) {
            return baselines::schedule_action(policy, t, config.horizon, rng);
          }));
    }
    result.traces["always"][run] = check(run_strategy(
        setup, config, run, [](mdp::Session&, int) { return 1; }));
    result.traces["never"][run] = check(run_strategy(
        setup, config, run, [](mdp::Session&, int) { return 0; }));
  });

  for (const auto& name : result.strategy_names) {
    const auto& traces = result.traces[name];
    double mean_updates = 0.0;
    for (const auto& trace : traces) mean_updates += trace.update_count;
    mean_updates /= runs;
    for (double mu : config.mu_grid) {
      std::vector<double> utilities;
      utilities.reserve(runs);
      for (const auto& trace : traces)
        utilities.push_back(mdp::cumulative_utility(trace.ledger, mu));
      double mean = 0.0;
      for (double u : utilities) mean += u;
      mean /= runs;
      result.rows.push_back(
          {name, mu, mean, sample_stderr(utilities), mean_updates});
    }
  }
  return result;
}

RhoTuneResult tune_rho(const ExperimentConfig& config) {
  ScenarioSetup setup = make_scenario(config);
  RhoTuneResult result;
  std::map<double, std::map<double, double>> mean_utility;  // rho -> mu -> U

  for (std::size_t ri = 0; ri < config.rho_grid.size(); ++ri) {
    const double rho = config.rho_grid[ri];
    std::vector<ppo::IterationLog> curve;
    ppo::ActorCritic nets = train_agent(config, &curve, rho);
    result.curves[rho] = std::move(curve);

    // pilot episodes in the training environment, utilities per mu
    for (int pilot = 0; pilot < config.pilot_runs; ++pilot) {
      const std::uint64_t idx = ri * 10000 + pilot;
      mdp::DriftEnvConfig env_config;
      env_config.theta1 = setup.theta_assumed;
      env_config.phi = setup.phi_assumed;
      env_config.horizon = config.train_horizon;
      env_config.batch_size = config.batch_size;
      env_config.resample_covariates = false;
      env_config.fit = setup.fit;
      env_config.rho = rho;
      env_config.seed = derive_seed(config.master_seed, "pilot_env", idx);
      mdp::DriftEnv env(env_config);
      Rng rng = make_rng(config.master_seed, "pilot_policy", idx);

      Eigen::VectorXd state = env.reset();
      bool done = false;
      while (!done) {
        const int action =
            ppo::act(nets.actor, state, ppo::ActMode::kProbabilistic, rng);
        mdp::StepResult res = env.step(action);
        state = res.state;
        done = res.done;
      }
      for (double mu : config.mu_grid)
        mean_utility[rho][mu] +=
            mdp::cumulative_utility(env.session().ledger(), mu) /
            config.pilot_runs;
    }
    for (double mu : config.mu_grid)
      result.pilot_table.push_back({rho, mu, mean_utility[rho][mu]});
  }

  // winner: the rho that maximizes utility at the most mu values,
  // ties toward smaller rho
  std::map<double, int> wins;
  for (double mu : config.mu_grid) {
    double best_rho = config.rho_grid.front();
    double best_u = -1e300;
    for (double rho : config.rho_grid) {
      const double u = mean_utility[rho][mu];
      if (u > best_u) {
        best_u = u;
        best_rho = rho;
      }
    }
    ++wins[best_rho];
  }
  double chosen = config.rho_grid.front();
  int best_wins = -1;
  std::vector<double> sorted_grid = config.rho_grid;
  std::sort(sorted_grid.begin(), sorted_grid.end());
  for (double rho : sorted_grid) {
    if (wins[rho] > best_wins) {
      best_wins = wins[rho];
      chosen = rho;
    }
  }
  result.chosen_rho = chosen;
  return result;
}

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

void emit_outputs(const ExperimentConfig& config,
                  const ComparisonResult& result,
                  const std::vector<ppo::IterationLog>& curve) {
  const fs::path out_dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(out_dir / "traces", ec);
  if (ec)
    throw std::runtime_error("cannot create output directory: " +
                             (out_dir / "traces").string());

  {
    std::ofstream csv(out_dir / "results.csv");
    csv << "strategy,mu,mean_utility,stderr,mean_updates\n";
    for (const auto& row : result.rows)
      csv << row.strategy << ',' << fmt(row.mu) << ',' << fmt(row.mean_utility)
          << ',' << fmt(row.stderr_utility) << ',' << fmt(row.mean_updates)
          << '\n';
    if (!csv) throw std::runtime_error("write failed: results.csv");
  }

  {
    std::ofstream md(out_dir / "results.md");
    md << "# Average cumulative utility (" << to_string(config.scenario)
       << ", T=" << config.horizon << ", " << config.num_runs << " runs)\n\n";
    md << "| Method |";
    for (double mu : config.mu_grid) md << " mu=" << mu << " |";
    md << "\n|---|";
    for (std::size_t i = 0; i < config.mu_grid.size(); ++i) md << "---|";
    md << "\n";
    for (const auto& name : result.strategy_names) {
      md << "| " << name << " |";
      for (double mu : config.mu_grid) {
        for (const auto& row : result.rows)
          if (row.strategy == name && row.mu == mu) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), " %.1f (%.2f) |",
                          row.mean_utility, row.stderr_utility);
            md << buf;
          }
      }
      md << "\n";
    }
    md << "\nMean updates: ";
    for (const auto& name : result.strategy_names)
      for (const auto& row : result.rows)
        if (row.strategy == name && row.mu == config.mu_grid.front())
          md << name << "=" << fmt(row.mean_updates) << " ";
    md << "\n";
  }

  for (const auto& name : result.strategy_names) {
    const auto& traces = result.traces.at(name);
    for (std::size_t run = 0; run < traces.size(); ++run) {
      char fname[128];
      std::snprintf(fname, sizeof(fname), "%s_run%03zu.csv", name.c_str(),
                    run);
      std::ofstream csv(out_dir / "traces" / fname);
      csv << "t,action,reward,utility,last_update\n";
      const auto& trace = traces[run];
      int last_update = 1;
      for (std::size_t i = 0; i < trace.ledger.actions.size(); ++i) {
        const int t = static_cast<int>(i) + 1;
        if (trace.ledger.actions[i] == 1) last_update = t;
        csv << t << ',' << trace.ledger.actions[i] << ','
            << fmt(trace.rewards[i]) << ',' << fmt(trace.ledger.utilities[i])
            << ',' << last_update << '\n';
      }
    }
  }

  {
    std::ofstream csv(out_dir / "reward_curve.csv");
    csv << "iteration,mean_episode_reward,mean_episode_length\n";
    for (const auto& log : curve)
      csv << log.iteration << ',' << fmt(log.mean_episode_reward) << ','
          << fmt(log.mean_episode_length) << '\n';
  }

  {
    std::ofstream snap(out_dir / "config_snapshot.txt");
    write_config(snap, config);
  }
}

void emit_tune_outputs(const ExperimentConfig& config,
                       const RhoTuneResult& result) {
  const fs::path out_dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory: " +
                             out_dir.string());

  for (const auto& [rho, curve] : result.curves) {
    char fname[64];
    std::snprintf(fname, sizeof(fname), "reward_curve_rho%g.csv", rho);
    std::ofstream csv(out_dir / fname);
    csv << "iteration,mean_episode_reward,mean_episode_length\n";
    for (const auto& log : curve)
      csv << log.iteration << ',' << fmt(log.mean_episode_reward) << ','
          << fmt(log.mean_episode_length) << '\n';
  }
  {
    std::ofstream csv(out_dir / "rho_pilot.csv");
    csv << "rho,mu,mean_utility\n";
    for (const auto& row : result.pilot_table)
      csv << fmt(row.rho) << ',' << fmt(row.mu) << ',' << fmt(row.mean_utility)
          << '\n';
  }
  std::ofstream chosen(out_dir / "chosen_rho.txt");
  chosen << fmt(result.chosen_rho) << '\n';
}

void run_simulate(const ExperimentConfig& config) {
  ScenarioSetup setup = make_scenario(config);
  const fs::path out_dir = fs::path(config.out_dir) / "sim";
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory: " +
                             out_dir.string());

  for (int run = 0; run < config.num_runs; ++run) {
    EvalStream stream(setup, config, run);
    char fname[64];
    std::snprintf(fname, sizeof(fname), "drift_path_run%03d.csv", run);
    {
      std::ofstream csv(out_dir / fname);
      csv << "t,intercept";
      const int d = setup.theta_true.dim();
      for (int j = 0; j < d; ++j) csv << ",c" << j + 1;
      if (setup.theta_true.extended_terms)
        csv << ",ext_interaction,ext_quadratic,ext_extra";
      csv << "\n";
      for (int t = 0; t < stream.path().horizon(); ++t) {
        const auto& theta = stream.path().params[t];
        csv << t + 1 << ',' << fmt(theta.intercept);
        for (int j = 0; j < d; ++j) csv << ',' << fmt(theta.coefficients[j]);
        if (theta.extended_terms)
          for (int j = 0; j < 3; ++j) csv << ',' << fmt((*theta.extended_terms)[j]);
        csv << '\n';
      }
    }
    std::snprintf(fname, sizeof(fname), "batch_stats_run%03d.csv", run);
    std::ofstream csv(out_dir / fname);
    csv << "t,label_mean\n";
    for (int t = 1; t <= config.horizon; ++t) {
      drift::Batch batch = stream.next();
      csv << t << ',' << fmt(batch.labels.mean()) << '\n';
    }
  }
}

bool run_gradcheck(std::ostream& log) {
  Rng rng(20240817);
  std::normal_distribution<double> normal(0.0, 1.0);
  bool ok = true;
  const double h = 1e-5;
  const std::vector<std::vector<int>> shapes = {{14, 64, 64, 2},
                                                {14, 64, 64, 1}};
  for (int trial = 0; trial < 5; ++trial) {
    for (const auto& dims : shapes) {
      nn::Mlp net = nn::make_mlp(dims, rng);
      Eigen::VectorXd x(dims.front()), w(dims.back());
      for (int i = 0; i < dims.front(); ++i) x[i] = normal(rng);
      for (int i = 0; i < dims.back(); ++i) w[i] = normal(rng);
      auto loss = [&](const nn::Mlp& m) { return w.dot(nn::forward(m, x)); };

      nn::ForwardCache cache;
      nn::forward(net, x, cache);
      nn::Gradients grads = nn::zero_like(net);
      nn::backward(net, cache, w, grads);

      double max_rel = 0.0;
      for (int l = 0; l < net.num_layers(); ++l) {
        auto check_param = [&](double& p, double analytic) {
          const double saved = p;
          p = saved + h;
          const double up = loss(net);
          p = saved - h;
          const double down = loss(net);
          p = saved;
          const double fd = (up - down) / (2.0 * h);
          const double rel = std::abs(analytic - fd) /
                             std::max({1e-8, std::abs(analytic), std::abs(fd)});
          max_rel = std::max(max_rel, rel);
        };
        for (Eigen::Index i = 0; i < net.weights[l].rows(); ++i)
          for (Eigen::Index j = 0; j < net.weights[l].cols(); ++j)
            check_param(net.weights[l](i, j), grads.weights[l](i, j));
        for (Eigen::Index i = 0; i < net.biases[l].size(); ++i)
          check_param(net.biases[l][i], grads.biases[l][i]);
      }
      log << "gradcheck trial " << trial << " net " << dims.back()
          << "-headed: max relative error " << max_rel << "\n";
      if (!(max_rel < 1e-4)) ok = false;
    }
  }
  return ok;
}

}  // namespace amuse::harness
