#include "amuse.h"

#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "amuse/harness.hpp"

struct amuse_config {
  amuse::harness::ExperimentConfig impl;
};

namespace {

thread_local std::string g_last_error;

amuse_status fail(amuse_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Maps config validation problems to AMUSE_ERR_CONFIG, everything else
// to AMUSE_ERR_RUNTIME.
template <typename Fn>
amuse_status guarded(Fn&& fn) {
  try {
    fn();
    return AMUSE_OK;
  } catch (const std::invalid_argument& e) {
    return fail(AMUSE_ERR_CONFIG, e.what());
  } catch (const std::exception& e) {
    return fail(AMUSE_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(AMUSE_ERR_RUNTIME, "unknown error");
  }
}

}  // namespace

extern "C" {

const char* amuse_version(void) { return "0.1.0"; }

amuse_config* amuse_config_create(void) { return new amuse_config(); }

void amuse_config_destroy(amuse_config* config) { delete config; }

amuse_status amuse_config_load_file(amuse_config* config, const char* path) {
  if (!config || !path) return fail(AMUSE_ERR_CONFIG, "null argument");
  return guarded([&] {
    config->impl = amuse::harness::load_config_file(path);
  });
}

amuse_status amuse_config_set(amuse_config* config, const char* key,
                              const char* value) {
  if (!config || !key || !value) return fail(AMUSE_ERR_CONFIG, "null argument");
  return guarded(
      [&] { amuse::harness::set_config_key(config->impl, key, value); });
}

amuse_status amuse_config_get(const amuse_config* config, const char* key,
                              char* buffer, unsigned long buffer_size) {
  if (!config || !key || !buffer || buffer_size == 0)
    return fail(AMUSE_ERR_CONFIG, "null argument");
  return guarded([&] {
    std::ostringstream snapshot;
    amuse::harness::write_config(snapshot, config->impl);
    std::istringstream in(snapshot.str());
    std::string line;
    const std::string prefix = std::string(key) + " = ";
    while (std::getline(in, line)) {
      if (line.rfind(prefix, 0) == 0) {
        const std::string value = line.substr(prefix.size());
        std::strncpy(buffer, value.c_str(), buffer_size - 1);
        buffer[buffer_size - 1] = '\0';
        return;
      }
    }
    throw std::invalid_argument("config: unknown key '" + std::string(key) +
                                "'");
  });
}

amuse_status amuse_train(const amuse_config* config,
                         const char* checkpoint_path) {
  if (!config || !checkpoint_path)
    return fail(AMUSE_ERR_CONFIG, "null argument");
  return guarded([&] {
    std::vector<amuse::ppo::IterationLog> curve;
    amuse::ppo::ActorCritic nets =
        amuse::harness::train_agent(config->impl, &curve);

    namespace fs = std::filesystem;
    std::error_code ec;
    const fs::path parent = fs::path(checkpoint_path).parent_path();
    if (!parent.empty()) fs::create_directories(parent, ec);
    amuse::harness::save_checkpoint(checkpoint_path, nets);
    fs::create_directories(config->impl.out_dir, ec);
    std::ofstream csv(fs::path(config->impl.out_dir) / "reward_curve.csv");
    csv << "iteration,mean_episode_reward,mean_episode_length\n";
    for (const auto& log : curve)
      csv << log.iteration << ',' << log.mean_episode_reward << ','
          << log.mean_episode_length << '\n';
  });
}

amuse_status amuse_compare(const amuse_config* config,
                           const char* checkpoint_path) {
  if (!config) return fail(AMUSE_ERR_CONFIG, "null argument");
  return guarded([&] {
    std::vector<amuse::ppo::IterationLog> curve;
    amuse::ppo::ActorCritic nets;
    if (checkpoint_path && *checkpoint_path) {
      nets = amuse::harness::load_checkpoint(checkpoint_path);
    } else {
      nets = amuse::harness::train_agent(config->impl, &curve);
      namespace fs = std::filesystem;
      std::error_code ec;
      fs::create_directories(config->impl.out_dir, ec);
      amuse::harness::save_checkpoint(
          (fs::path(config->impl.out_dir) / "checkpoint.txt").string(), nets);
    }
    amuse::harness::ComparisonResult result =
        amuse::harness::run_comparison(config->impl, nets);
    amuse::harness::emit_outputs(config->impl, result, curve);
  });
}

amuse_status amuse_tune_rho(const amuse_config* config, double* chosen_rho) {
  if (!config) return fail(AMUSE_ERR_CONFIG, "null argument");
  return guarded([&] {
    amuse::harness::RhoTuneResult result =
        amuse::harness::tune_rho(config->impl);
    amuse::harness::emit_tune_outputs(config->impl, result);
    if (chosen_rho) *chosen_rho = result.chosen_rho;
  });
}

amuse_status amuse_simulate(const amuse_config* config) {
  if (!config) return fail(AMUSE_ERR_CONFIG, "null argument");
  return guarded([&] { amuse::harness::run_simulate(config->impl); });
}

amuse_status amuse_gradcheck(void) {
  return guarded([&] {
    std::ostringstream log;
    if (!amuse::harness::run_gradcheck(log))
      throw std::runtime_error("gradient check failed:\n" + log.str());
  });
}

const char* amuse_last_error(void) { return g_last_error.c_str(); }

}  // extern "C"
