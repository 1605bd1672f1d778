#pragma once

#include <string>
#include <vector>

#include "rfsgd/config.hpp"

namespace rfsgd {

struct ExperimentSummary {
  std::vector<std::string> output_files;  // paths written, in order
  std::vector<std::string> warnings;      // schedule precondition findings
  std::vector<std::string> notes;         // headline numbers for the console
};

/// Runs one named experiment end to end and writes its CSV outputs under
/// cfg.outdir (created if absent). Every file starts with a provenance block
/// that reproduces the resolved config.
ExperimentSummary run_experiment(const ExperimentConfig& cfg);

}  // namespace rfsgd
