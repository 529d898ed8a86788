// amuse CLI: thin front end over the C API in amuse.h.
//
// Exit codes: 0 success, 1 usage/config error, 2 runtime failure.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "amuse.h"

namespace {

struct ConfigDeleter {
  void operator()(amuse_config* c) const { amuse_config_destroy(c); }
};
using ConfigHandle = std::unique_ptr<amuse_config, ConfigDeleter>;

int report(amuse_status status) {
  if (status != AMUSE_OK)
    std::fprintf(stderr, "error: %s\n", amuse_last_error());
  return static_cast<int>(status);
}

// Applies --config, the common flags and any --set key=value overrides.
struct CommonOpts {
  std::string config_file;
  std::string scenario;
  std::string out_dir;
  std::string seed;
  std::string runs, horizon, batch_size, rho, steps;
  std::vector<std::string> overrides;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_file, "key=value configuration file");
    cmd->add_option("--scenario", scenario,
                    "well_specified or misspecified (default well_specified)");
    cmd->add_option("--out", out_dir, "output directory (default out)");
    cmd->add_option("--seed", seed, "master seed (default 1)");
    cmd->add_option("--runs", runs, "number of evaluation runs");
    cmd->add_option("--T", horizon, "deployment horizon T");
    cmd->add_option("--n", batch_size, "samples per batch");
    cmd->add_option("--rho", rho, "reward update penalty");
    cmd->add_option("--steps", steps, "PPO training budget in env steps");
    cmd->add_option("--set", overrides,
                    "extra key=value override (repeatable)");
  }

  amuse_status apply(amuse_config* config) const {
    amuse_status st = AMUSE_OK;
    if (!config_file.empty())
      if ((st = amuse_config_load_file(config, config_file.c_str())) != AMUSE_OK)
        return st;
    auto set = [&](const char* key, const std::string& value) {
      if (st == AMUSE_OK && !value.empty())
        st = amuse_config_set(config, key, value.c_str());
    };
    set("scenario", scenario);
    set("out_dir", out_dir);
    set("master_seed", seed);
    set("runs", runs);
    set("T", horizon);
    set("n", batch_size);
    set("rho", rho);
    set("train_total_steps", steps);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::fprintf(stderr, "error: --set expects key=value, got '%s'\n",
                     kv.c_str());
        return AMUSE_ERR_CONFIG;
      }
      if (st == AMUSE_OK)
        st = amuse_config_set(config, kv.substr(0, eq).c_str(),
                              kv.substr(eq + 1).c_str());
    }
    return st;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AMUSE: adaptive model updating trained in a simulated drift "
               "environment"};
  app.require_subcommand(0, 1);
  app.failure_message(CLI::FailureMessage::help);

  CommonOpts train_opts, compare_opts, tune_opts, sim_opts;
  std::string train_checkpoint = "checkpoint.txt";
  std::string compare_checkpoint;

  CLI::App* train = app.add_subcommand(
      "train", "Train the PPO updating policy in the simulating environment");
  train_opts.attach(train);
  train->add_option("--checkpoint", train_checkpoint,
                    "where to write the trained checkpoint");

  CLI::App* compare = app.add_subcommand(
      "compare",
      "Benchmark static/dynamic AMUSE against the baseline strategies");
  compare_opts.attach(compare);
  compare->add_option("--checkpoint", compare_checkpoint,
                      "pretrained checkpoint (trains first when omitted)");

  CLI::App* tune = app.add_subcommand(
      "tune-rho", "Sweep the update-penalty grid and recommend a rho");
  tune_opts.attach(tune);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Emit drift-path and batch traces without any policy");
  sim_opts.attach(simulate);

  app.add_subcommand("gradcheck",
                     "Finite-difference self-test of the network gradients");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // collapse CLI11's per-error exit codes onto the documented contract:
    // 0 for --help, 1 for any usage problem
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (app.get_subcommands().empty()) {
    std::printf("%s\n", app.help().c_str());
    return 0;
  }
  CLI::App* cmd = app.get_subcommands().front();

  ConfigHandle config(amuse_config_create());
  auto run = [&](const CommonOpts& opts, auto&& action) {
    amuse_status st = opts.apply(config.get());
    if (st != AMUSE_OK) return report(st);
    return report(action());
  };

  if (cmd == train)
    return run(train_opts, [&] {
      return amuse_train(config.get(), train_checkpoint.c_str());
    });
  if (cmd == compare)
    return run(compare_opts, [&] {
      return amuse_compare(config.get(), compare_checkpoint.empty()
                                             ? nullptr
                                             : compare_checkpoint.c_str());
    });
  if (cmd == tune)
    return run(tune_opts, [&] {
      double chosen = 0.0;
      const amuse_status st = amuse_tune_rho(config.get(), &chosen);
      if (st == AMUSE_OK) std::printf("chosen rho: %g\n", chosen);
      return st;
    });
  if (cmd == simulate)
    return run(sim_opts, [&] { return amuse_simulate(config.get()); });

  // gradcheck
  const amuse_status st = amuse_gradcheck();
  if (st == AMUSE_OK) std::printf("gradient check passed\n");
  return report(st);
}
