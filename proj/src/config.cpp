#include "amuse/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace amuse::harness {

std::string to_string(Scenario s) {
  return s == Scenario::kWellSpecified ? "well_specified" : "misspecified";
}

Scenario scenario_from_string(const std::string& name) {
  if (name == "well_specified") return Scenario::kWellSpecified;
  if (name == "misspecified") return Scenario::kMisspecified;
  throw std::invalid_argument("unknown scenario: " + name);
}

namespace {

std::vector<double> parse_grid(const std::string& value) {
  std::vector<double> grid;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    grid.push_back(v);
  }
  if (grid.empty()) throw std::invalid_argument("empty list value");
  return grid;
}

std::string grid_to_string(const std::vector<double>& grid) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i) ss << ',';
    ss << grid[i];
  }
  return ss.str();
}

struct Field {
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

using FieldMap = std::map<std::string, Field, std::less<>>;

template <typename T>
Field numeric_field(T ExperimentConfig::* member) {
  return {[member](ExperimentConfig& c, const std::string& v) {
            if constexpr (std::is_same_v<T, double>)
              c.*member = std::stod(v);
            else if constexpr (std::is_same_v<T, long>)
              c.*member = std::stol(v);
            else if constexpr (std::is_same_v<T, std::uint64_t>)
              c.*member = std::stoull(v);
            else
              c.*member = std::stoi(v);
          },
          [member](const ExperimentConfig& c) {
            std::ostringstream ss;
            ss << c.*member;
            return ss.str();
          }};
}

Field grid_field(std::vector<double> ExperimentConfig::* member) {
  return {[member](ExperimentConfig& c, const std::string& v) {
            c.*member = parse_grid(v);
          },
          [member](const ExperimentConfig& c) {
            return grid_to_string(c.*member);
          }};
}

const FieldMap& fields() {
  static const FieldMap map = [] {
    FieldMap m;
    m["scenario"] = {[](ExperimentConfig& c, const std::string& v) {
                       c.scenario = scenario_from_string(v);
                     },
                     [](const ExperimentConfig& c) {
                       return to_string(c.scenario);
                     }};
    m["T"] = numeric_field(&ExperimentConfig::horizon);
    m["n"] = numeric_field(&ExperimentConfig::batch_size);
    m["runs"] = numeric_field(&ExperimentConfig::num_runs);
    m["mu_grid"] = grid_field(&ExperimentConfig::mu_grid);
    m["rho"] = numeric_field(&ExperimentConfig::rho);
    m["master_seed"] = numeric_field(&ExperimentConfig::master_seed);
    m["out_dir"] = {[](ExperimentConfig& c, const std::string& v) {
                      c.out_dir = v;
                    },
                    [](const ExperimentConfig& c) { return c.out_dir; }};
    m["feature_dim"] = numeric_field(&ExperimentConfig::feature_dim);
    m["drift_step_std"] = numeric_field(&ExperimentConfig::drift_step_std);
    m["drift_jump_prob"] = numeric_field(&ExperimentConfig::drift_jump_prob);
    m["drift_jump_std"] = numeric_field(&ExperimentConfig::drift_jump_std);
    m["extended_term_std"] =
        numeric_field(&ExperimentConfig::extended_term_std);
    m["fit_ridge"] = numeric_field(&ExperimentConfig::fit_ridge);
    m["fit_tol"] = numeric_field(&ExperimentConfig::fit_tol);
    m["fit_max_iter"] = numeric_field(&ExperimentConfig::fit_max_iter);
    m["train_total_steps"] =
        numeric_field(&ExperimentConfig::train_total_steps);
    m["train_J"] = numeric_field(&ExperimentConfig::train_horizon);
    m["ppo_B"] = numeric_field(&ExperimentConfig::ppo_rollout);
    m["ppo_G"] = numeric_field(&ExperimentConfig::ppo_minibatch);
    m["ppo_K"] = numeric_field(&ExperimentConfig::ppo_epochs);
    m["ppo_clip"] = numeric_field(&ExperimentConfig::ppo_clip);
    m["gamma"] = numeric_field(&ExperimentConfig::gamma);
    m["gae_lambda"] = numeric_field(&ExperimentConfig::gae_lambda);
    m["value_coef"] = numeric_field(&ExperimentConfig::value_coef);
    m["entropy_coef"] = numeric_field(&ExperimentConfig::entropy_coef);
    m["learning_rate"] = numeric_field(&ExperimentConfig::learning_rate);
    m["dyn_B"] = numeric_field(&ExperimentConfig::dyn_rollout);
    m["dyn_G"] = numeric_field(&ExperimentConfig::dyn_minibatch);
    m["dyn_K"] = numeric_field(&ExperimentConfig::dyn_epochs);
    m["dyn_learning_rate"] =
        numeric_field(&ExperimentConfig::dyn_learning_rate);
    m["hddm_alpha_drift"] = numeric_field(&ExperimentConfig::hddm_alpha_drift);
    m["hddm_alpha_warn"] = numeric_field(&ExperimentConfig::hddm_alpha_warn);
    m["rho_grid"] = grid_field(&ExperimentConfig::rho_grid);
    m["pilot_runs"] = numeric_field(&ExperimentConfig::pilot_runs);
    m["threads"] = numeric_field(&ExperimentConfig::threads);
    return m;
  }();
  return map;
}

}  // namespace

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("config: " + msg);
  };
  if (horizon < 2) fail("T must be >= 2");
  if (batch_size < 2) fail("n must be >= 2");
  if (num_runs < 1) fail("runs must be >= 1");
  if (mu_grid.empty()) fail("mu_grid must be non-empty");
  for (double mu : mu_grid)
    if (mu < 0.0) fail("mu_grid entries must be >= 0");
  if (rho < 0.0) fail("rho must be >= 0");
  if (feature_dim < 1) fail("feature_dim must be >= 1");
  if (drift_step_std < 0.0 || drift_jump_std < 0.0)
    fail("drift stds must be >= 0");
  if (drift_jump_prob < 0.0 || drift_jump_prob > 1.0)
    fail("drift_jump_prob must be in [0,1]");
  if (train_horizon < 2) fail("train_J must be >= 2");
  if (ppo_rollout < 1 || dyn_rollout < 1) fail("rollout sizes must be >= 1");
  if (ppo_minibatch < 1 || ppo_minibatch > ppo_rollout)
    fail("ppo_G must satisfy 1 <= G <= B");
  if (dyn_minibatch < 1 || dyn_minibatch > dyn_rollout)
    fail("dyn_G must satisfy 1 <= G <= B");
  if (ppo_epochs < 1 || dyn_epochs < 1) fail("epochs must be >= 1");
  if (ppo_clip <= 0.0) fail("ppo_clip must be > 0");
  if (gamma < 0.0 || gamma > 1.0) fail("gamma must be in [0,1]");
  if (gae_lambda < 0.0 || gae_lambda > 1.0) fail("gae_lambda must be in [0,1]");
  if (train_total_steps < ppo_rollout)
    fail("train_total_steps must cover at least one rollout (B)");
  if (!(hddm_alpha_drift > 0.0 && hddm_alpha_drift <= hddm_alpha_warn &&
        hddm_alpha_warn < 1.0))
    fail("need 0 < hddm_alpha_drift <= hddm_alpha_warn < 1");
  if (rho_grid.empty()) fail("rho_grid must be non-empty");
  if (pilot_runs < 1) fail("pilot_runs must be >= 1");
  if (threads < 0) fail("threads must be >= 0");
}

void set_config_key(ExperimentConfig& config, const std::string& key,
                    const std::string& value) {
  auto it = fields().find(key);
  if (it == fields().end())
    throw std::invalid_argument("config: unknown key '" + key + "'");
  try {
    it->second.set(config, value);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad value for '" + key + "': " +
                                value);
  }
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not key=value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    set_config_key(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  return parse_config(in);
}

void write_config(std::ostream& out, const ExperimentConfig& config) {
  out << "# amuse experiment configuration\n";
  for (const auto& [key, field] : fields())
    out << key << " = " << field.get(config) << "\n";
}

}  // namespace amuse::harness
