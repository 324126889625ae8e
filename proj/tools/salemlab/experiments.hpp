#pragma once

#include <map>
#include <string>
#include <vector>

#include "config.hpp"
#include "salemlab/sampler/calibration.hpp"
#include "salemlab/sampler/report.hpp"

namespace salemlab::cli {

struct RunOutput {
  std::vector<EventReport> reports;  // trial order, then plan order
  std::map<std::string, std::string> files;  // extra artifacts: name -> contents
};

// Module preconditions surface as DomainError / ConfigurationError.
RunOutput run_experiment(const ExperimentConfig& config, const Calibration& calibration);

// One row per event id: event,hard,trials,passes,worst_observed,threshold_at_worst,worst_ratio,warnings
std::string summary_csv(const std::vector<EventReport>& reports);

// %.17g, so CSV output round-trips and is byte-stable.
std::string num(double x);

}  // namespace salemlab::cli
