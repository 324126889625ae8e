#pragma once

#include <map>
#include <string>
#include <vector>

#include "salemlab/sampler/calibration.hpp"
#include "salemlab/sampler/certify.hpp"

namespace salemlab {

enum class EventKind { fourier_decay, cube_fixed, cube_log, point_mass, uniformity, configuration };

// One certifier to run on every trial.
struct EventSpec {
  EventKind kind = EventKind::fourier_decay;
  int ell = 1;
  Rational eps{1, 2};  // cube_fixed
  double beta = 0.5;   // cube_log, configuration
  int kappa = 1;       // uniformity
  double B = 1.0;      // point_mass
  bool all_prefixes = true;
};

struct TrialPlan {
  SampleConfig config;
  std::vector<EventSpec> events;
  Calibration calibration = default_calibration();
};

struct EventSummary {
  std::string event;
  std::int64_t passes = 0;
  std::int64_t trials = 0;
  double threshold = 0.0;        // at the worst trial
  double worst_observed = 0.0;
  double worst_ratio = 0.0;      // observed / threshold
  std::int64_t worst_trial = -1;
  bool hard = true;
  std::int64_t warnings = 0;
};

struct TrialsResult {
  std::vector<EventReport> reports;  // trial-major, events in plan order
  std::vector<EventSummary> summaries;  // first-appearance order
  bool exists_all_pass = false;
  std::int64_t witness_trial = -1;
  std::vector<std::vector<Index>> witness_atoms;  // coordinates

  bool any_hard_failure() const;
  bool any_warning() const;
};

// Runs config.trial_count independent trials in parallel. Reports are
// gathered by trial index, so the result does not depend on the number of
// workers.
TrialsResult run_trials(const TrialPlan& plan);

std::vector<EventReport> certify_sample(const Sample& sample, const TrialPlan& plan,
                                        RegularityConstants& table);

OrderedJson to_json(const TrialsResult& result);

}  // namespace salemlab
