#include "rfsgd/config.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rfsgd/csv.hpp"
#include "rfsgd/data.hpp"
#include "rfsgd/kernel.hpp"
#include "rfsgd/loss.hpp"
#include "rfsgd/rng.hpp"

namespace rfsgd {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& want) {
  throw std::invalid_argument("configuration key " + key + ": value '" + value +
                              "' is not " + want);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    bad_value(key, value, "a number");
  }
  if (used != value.size()) bad_value(key, value, "a number");
  return v;
}

long parse_long(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(value, &used);
  } catch (const std::exception&) {
    bad_value(key, value, "an integer");
  }
  if (used != value.size()) bad_value(key, value, "an integer");
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  const long v = parse_long(key, value);
  if (v < INT_MIN || v > INT_MAX) bad_value(key, value, "a 32-bit integer");
  return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(value, &used);
  } catch (const std::exception&) {
    bad_value(key, value, "an unsigned integer");
  }
  if (used != value.size()) bad_value(key, value, "an unsigned integer");
  return static_cast<std::uint64_t>(v);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  if (trim(value).empty()) return parts;
  std::stringstream ss(value);
  std::string cell;
  while (std::getline(ss, cell, ',')) parts.push_back(trim(cell));
  return parts;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  for (const std::string& p : split_list(value)) out.push_back(parse_int(key, p));
  return out;
}

std::vector<long> parse_long_list(const std::string& key, const std::string& value) {
  std::vector<long> out;
  for (const std::string& p : split_list(value)) out.push_back(parse_long(key, p));
  return out;
}

template <class T>
std::string join_list(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "profile") {
    cfg.profile = value;
  } else if (key == "base_seed") {
    cfg.base_seed = parse_u64(key, value);
  } else if (key == "lambda") {
    cfg.lambda = parse_double(key, value);
  } else if (key == "gamma") {
    cfg.gamma = parse_double(key, value);
  } else if (key == "sigma") {
    cfg.sigma_raw = value;
  } else if (key == "loss") {
    cfg.loss = value;
  } else if (key == "M") {
    cfg.M = parse_int(key, value);
  } else if (key == "M_list") {
    cfg.M_list = parse_int_list(key, value);
  } else if (key == "fig5_M_list") {
    cfg.fig5_M_list = parse_int_list(key, value);
  } else if (key == "T") {
    cfg.T = parse_long(key, value);
  } else if (key == "T_kernel") {
    cfg.T_kernel = parse_long(key, value);
  } else if (key == "n_runs") {
    cfg.n_runs = parse_int(key, value);
  } else if (key == "n_test") {
    cfg.n_test = parse_long(key, value);
  } else if (key == "checkpoint_count") {
    cfg.checkpoint_count = parse_int(key, value);
  } else if (key == "checkpoints") {
    cfg.checkpoints = parse_long_list(key, value);
  } else if (key == "fig1_n") {
    cfg.fig1_n = parse_long(key, value);
  } else if (key == "crossover_threshold") {
    cfg.crossover_threshold = parse_double(key, value);
  } else if (key == "norm_n") {
    cfg.norm_n = parse_long(key, value);
  } else if (key == "norm_M_list") {
    cfg.norm_M_list = parse_int_list(key, value);
  } else if (key == "norm_replicates") {
    cfg.norm_replicates = parse_int(key, value);
  } else if (key == "norm_delta") {
    cfg.norm_delta = parse_double(key, value);
  } else if (key == "pairing") {
    cfg.pairing = value;
  } else if (key == "outdir") {
    cfg.outdir = value;
  } else {
    throw std::invalid_argument("unknown configuration key: " + key);
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void check_even_positive(const std::string& key, const std::vector<int>& ms) {
  require(!ms.empty(), "configuration key " + key + ": list must not be empty");
  for (int m : ms) {
    require(m > 0 && m % 2 == 0,
            "configuration key " + key + ": feature counts must be even and positive");
  }
}

void validate(const ExperimentConfig& cfg) {
  const auto& names = experiment_names();
  require(std::find(names.begin(), names.end(), cfg.experiment) != names.end(),
          "unknown experiment: " + cfg.experiment);
  require(cfg.profile == "desk" || cfg.profile == "paper",
          "configuration key profile: must be 'desk' or 'paper'");
  parse_loss(cfg.loss);  // throws on unknown names
  require(cfg.pairing == "diagonal" || cfg.pairing == "anti",
          "configuration key pairing: must be 'diagonal' or 'anti'");
  require(cfg.lambda > 0.0, "configuration key lambda: must be positive");
  require(cfg.gamma > 0.0, "configuration key gamma: must be positive");
  require(cfg.M > 0 && cfg.M % 2 == 0,
          "configuration key M: feature count must be even and positive");
  check_even_positive("M_list", cfg.M_list);
  check_even_positive("fig5_M_list", cfg.fig5_M_list);
  check_even_positive("norm_M_list", cfg.norm_M_list);
  for (std::size_t i = 1; i < cfg.norm_M_list.size(); ++i) {
    require(cfg.norm_M_list[i] > cfg.norm_M_list[i - 1],
            "configuration key norm_M_list: feature counts must be strictly increasing");
  }
  require(cfg.T >= 0, "configuration key T: must be >= 0");
  require(cfg.T_kernel >= 0, "configuration key T_kernel: must be >= 0");
  require(cfg.n_runs >= 1, "configuration key n_runs: must be >= 1");
  require(cfg.n_test >= 1, "configuration key n_test: must be >= 1");
  require(cfg.checkpoint_count >= 1, "configuration key checkpoint_count: must be >= 1");
  long prev = -1;
  for (long c : cfg.checkpoints) {
    require(c >= 0, "configuration key checkpoints: iteration indices must be >= 0");
    require(c <= cfg.T, "configuration key checkpoints: iteration index exceeds T");
    require(c > prev, "configuration key checkpoints: indices must be strictly increasing");
    prev = c;
  }
  require(cfg.fig1_n >= 1, "configuration key fig1_n: must be >= 1");
  require(cfg.crossover_threshold > 0.0,
          "configuration key crossover_threshold: must be positive");
  require(cfg.norm_n >= 2, "configuration key norm_n: must be >= 2");
  require(cfg.norm_replicates >= 5, "configuration key norm_replicates: must be >= 5");
  require(cfg.norm_delta > 0.0 && cfg.norm_delta < 1.0,
          "configuration key norm_delta: must lie in (0, 1)");
}

std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config file " + path + " line " +
                                  std::to_string(lineno) + ": expected key=value");
    }
    pairs.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return pairs;
}

}  // namespace

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.experiment == b.experiment && a.profile == b.profile &&
         a.base_seed == b.base_seed && a.lambda == b.lambda && a.gamma == b.gamma &&
         a.sigma == b.sigma && a.loss == b.loss && a.M == b.M &&
         a.M_list == b.M_list && a.fig5_M_list == b.fig5_M_list && a.T == b.T &&
         a.T_kernel == b.T_kernel && a.n_runs == b.n_runs && a.n_test == b.n_test &&
         a.checkpoint_count == b.checkpoint_count && a.checkpoints == b.checkpoints &&
         a.fig1_n == b.fig1_n && a.crossover_threshold == b.crossover_threshold &&
         a.norm_n == b.norm_n && a.norm_M_list == b.norm_M_list &&
         a.norm_replicates == b.norm_replicates && a.norm_delta == b.norm_delta &&
         a.pairing == b.pairing && a.outdir == b.outdir;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"fig1-data", "fig2", "fig4",
                                                 "fig5", "norm-decay"};
  return names;
}

SyntheticDistribution::Pairing parse_pairing(const std::string& name) {
  if (name == "diagonal") return SyntheticDistribution::Pairing::kDiagonal;
  if (name == "anti") return SyntheticDistribution::Pairing::kAntiDiagonal;
  throw std::invalid_argument("configuration key pairing: must be 'diagonal' or 'anti'");
}

ExperimentConfig resolve_config(
    const std::string& experiment, const std::string& config_path,
    std::span<const std::pair<std::string, std::string>> flag_overrides) {
  std::vector<std::pair<std::string, std::string>> merged;
  if (!config_path.empty()) merged = parse_config_file(config_path);
  merged.insert(merged.end(), flag_overrides.begin(), flag_overrides.end());

  // The profile fixes scale defaults; later explicit keys win over it.
  std::string profile = "desk";
  for (const auto& [k, v] : merged) {
    if (k == "profile") profile = v;
  }
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  cfg.profile = profile;
  if (profile == "paper") {
    cfg.n_runs = 100;
    cfg.n_test = 100000;
    cfg.T_kernel = 12000;
  }
  for (const auto& [k, v] : merged) apply_key(cfg, k, v);
  validate(cfg);

  if (cfg.sigma_raw == "median") {
    const SyntheticDistribution dist(parse_pairing(cfg.pairing));
    const auto pilot = dist.sample(500, derive_seed(cfg.base_seed, RngStream::kSigmaPilot));
    std::vector<double> xs;
    xs.reserve(pilot.size() * 2);
    for (const Sample& s : pilot) {
      xs.push_back(s.x[0]);
      xs.push_back(s.x[1]);
    }
    cfg.sigma = median_heuristic_sigma(xs, SyntheticDistribution::kDim);
  } else {
    cfg.sigma = parse_double("sigma", cfg.sigma_raw);
    require(cfg.sigma > 0.0, "configuration key sigma: must be positive or 'median'");
  }
  return cfg;
}

std::vector<std::pair<std::string, std::string>> provenance(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> p;
  p.emplace_back("experiment", cfg.experiment);
  p.emplace_back("profile", cfg.profile);
  p.emplace_back("base_seed", std::to_string(cfg.base_seed));
  p.emplace_back("lambda", format_double_exact(cfg.lambda));
  p.emplace_back("gamma", format_double_exact(cfg.gamma));
  p.emplace_back("sigma", format_double_exact(cfg.sigma));
  p.emplace_back("loss", cfg.loss);
  p.emplace_back("M", std::to_string(cfg.M));
  p.emplace_back("M_list", join_list(cfg.M_list));
  p.emplace_back("fig5_M_list", join_list(cfg.fig5_M_list));
  p.emplace_back("T", std::to_string(cfg.T));
  p.emplace_back("T_kernel", std::to_string(cfg.T_kernel));
  p.emplace_back("n_runs", std::to_string(cfg.n_runs));
  p.emplace_back("n_test", std::to_string(cfg.n_test));
  p.emplace_back("checkpoint_count", std::to_string(cfg.checkpoint_count));
  p.emplace_back("checkpoints", join_list(cfg.checkpoints));
  p.emplace_back("fig1_n", std::to_string(cfg.fig1_n));
  p.emplace_back("crossover_threshold", format_double_exact(cfg.crossover_threshold));
  p.emplace_back("norm_n", std::to_string(cfg.norm_n));
  p.emplace_back("norm_M_list", join_list(cfg.norm_M_list));
  p.emplace_back("norm_replicates", std::to_string(cfg.norm_replicates));
  p.emplace_back("norm_delta", format_double_exact(cfg.norm_delta));
  p.emplace_back("pairing", cfg.pairing);
  p.emplace_back("outdir", cfg.outdir);
  return p;
}

ExperimentConfig config_from_provenance(
    std::span<const std::pair<std::string, std::string>> pairs) {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> overrides;
  for (const auto& [k, v] : pairs) {
    if (k == "experiment") {
      experiment = v;
    } else {
      overrides.emplace_back(k, v);
    }
  }
  require(!experiment.empty(), "provenance block lacks an experiment key");
  return resolve_config(experiment, "", overrides);
}

std::vector<long> make_checkpoints(long T, int count) {
  require(T >= 1, "checkpoint grid: T must be >= 1");
  require(count >= 1, "checkpoint grid: count must be >= 1");
  if (count == 1) return {T};
  if (count >= T) {
    std::vector<long> all(static_cast<std::size_t>(T));
    for (long t = 1; t <= T; ++t) all[static_cast<std::size_t>(t - 1)] = t;
    return all;
  }
  std::vector<long> grid;
  grid.reserve(static_cast<std::size_t>(count));
  const double log_t = std::log(static_cast<double>(T));
  long prev = 0;
  for (int i = 0; i < count; ++i) {
    const double raw = std::exp(log_t * static_cast<double>(i) / (count - 1));
    long c = std::lround(raw);
    const long upper = T - static_cast<long>(count - 1 - i);
    c = std::clamp(c, prev + 1, upper);
    grid.push_back(c);
    prev = c;
  }
  return grid;
}

CliInvocation parse_cli(int argc, const char* const* argv) {
  CliInvocation inv;
  if (argc < 2) {
    throw std::invalid_argument("missing experiment name; run with --help for usage");
  }
  const std::string first = argv[1];
  if (first == "--help" || first == "-h") {
    inv.help = true;
    return inv;
  }
  inv.experiment = first;
  for (int i = 2; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--", 0) != 0 || arg.size() <= 2) {
      throw std::invalid_argument("unexpected argument '" + arg +
                                  "'; options take the form --key value");
    }
    const std::string key = arg.substr(2);
    if (i + 1 >= argc) {
      throw std::invalid_argument("missing value for --" + key);
    }
    const std::string value = argv[++i];
    if (key == "config") {
      inv.config_path = value;
    } else {
      inv.overrides.emplace_back(key, value);
    }
  }
  return inv;
}

}  // namespace rfsgd
