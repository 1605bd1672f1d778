#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rfsgd/data.hpp"

namespace rfsgd {

/// Fully resolved experiment configuration. Defaults reproduce the desk-scale
/// low-noise setup; the `paper` profile switches run counts, test-set size,
/// and the kernel-baseline horizon to publication scale.
struct ExperimentConfig {
  std::string experiment;
  std::string profile = "desk";
  std::uint64_t base_seed = 42;
  double lambda = 0.001;
  double gamma = 500.0;
  std::string sigma_raw = "median";  // requested value, "median" or a number
  double sigma = 0.0;                // resolved bandwidth
  std::string loss = "logistic";
  int M = 1000;
  std::vector<int> M_list = {100, 200, 500, 1000};
  std::vector<int> fig5_M_list = {500, 1000};
  long T = 12000;
  long T_kernel = 4000;
  int n_runs = 20;
  long n_test = 20000;
  int checkpoint_count = 60;
  std::vector<long> checkpoints;  // explicit grid; empty means log-spaced
  long fig1_n = 1000;
  double crossover_threshold = 0.02;
  long norm_n = 200;
  std::vector<int> norm_M_list = {16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
  int norm_replicates = 10;
  double norm_delta = 0.05;
  std::string pairing = "diagonal";  // diagonal | anti
  std::string outdir = "out";
};

/// Equality over everything an experiment consumes (sigma_raw excluded; two
/// configs that resolve to the same bandwidth are the same experiment).
bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

/// Known experiment names, in canonical order.
const std::vector<std::string>& experiment_names();

SyntheticDistribution::Pairing parse_pairing(const std::string& name);

/// Resolves precedence defaults < profile < config file < flag overrides,
/// validates every key, and fixes the bandwidth (median heuristic on a
/// 500-point pilot when sigma is "median"). Unknown keys and out-of-range
/// values throw with the offending key named. config_path may be empty.
ExperimentConfig resolve_config(
    const std::string& experiment, const std::string& config_path,
    std::span<const std::pair<std::string, std::string>> flag_overrides);

/// Provenance block for output files: every key needed to reproduce the
/// resolved config, in a fixed order, numbers at full precision.
std::vector<std::pair<std::string, std::string>> provenance(const ExperimentConfig& cfg);

/// Rebuilds a config from a provenance block; the result compares equal to
/// the config that emitted the block.
ExperimentConfig config_from_provenance(
    std::span<const std::pair<std::string, std::string>> pairs);

/// Strictly increasing log-spaced iteration grid: `count` values in [1, T]
/// ending at T, or 1..T when count >= T.
std::vector<long> make_checkpoints(long T, int count);

struct CliInvocation {
  std::string experiment;
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  bool help = false;
};

/// Parses `<experiment> [--config FILE] [--key value ...]`.
CliInvocation parse_cli(int argc, const char* const* argv);

}  // namespace rfsgd
