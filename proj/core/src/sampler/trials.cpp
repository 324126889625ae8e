#include "salemlab/sampler/trials.hpp"

#include <algorithm>

#include "salemlab/parallel.hpp"

namespace salemlab {

std::vector<EventReport> certify_sample(const Sample& sample, const TrialPlan& plan,
                                        RegularityConstants& table) {
  const SampleConfig& c = plan.config;
  const Calibration& cal = plan.calibration;
  std::vector<EventReport> out;
  for (const EventSpec& e : plan.events) {
    switch (e.kind) {
      case EventKind::fourier_decay:
        out.push_back(certify_fourier_decay(sample.sigma(), c.h));
        break;
      case EventKind::cube_fixed:
        out.push_back(certify_cube_regularity(sample, e.ell, {CubeMode::fixed, e.eps, e.beta, e.all_prefixes}, c.h,
                                              &table));
        break;
      case EventKind::cube_log:
        out.push_back(certify_cube_regularity(sample, e.ell, {CubeMode::log, e.eps, e.beta, e.all_prefixes}, c.h));
        break;
      case EventKind::point_mass:
        out.push_back(certify_point_mass(sample.sigma(), e.ell, e.B, c.h, cal.point_mass_M0));
        break;
      case EventKind::uniformity:
        out.push_back(certify_uniformity(sample, e.ell, e.kappa, c.h, cal.uniformity_C,
                                         e.all_prefixes));
        break;
      case EventKind::configuration: {
        auto rs = certify_point_mass_configuration(sample, e.beta, c.max_order, cal);
        for (auto& r : rs) out.push_back(std::move(r));
        break;
      }
    }
  }
  for (auto& r : out) {
    r.trial = sample.trial;
    r.trial_seed = sample.trial_seed;
  }
  return out;
}

bool TrialsResult::any_hard_failure() const {
  return std::any_of(reports.begin(), reports.end(), [](const EventReport& r) { return r.hard && !r.pass; });
}

bool TrialsResult::any_warning() const {
  return std::any_of(reports.begin(), reports.end(),
                     [](const EventReport& r) { return !r.warnings.empty() || (!r.hard && !r.pass); });
}

TrialsResult run_trials(const TrialPlan& plan) {
  plan.config.validate();
  const auto T = static_cast<std::size_t>(plan.config.trial_count);
  RegularityConstants table(plan.config.grid.d());
  std::vector<std::vector<EventReport>> per_trial(T);
  std::vector<Sample> samples(T, Sample{plan.config.grid, {}});
  parallel_for(static_cast<std::int64_t>(T), [&](std::int64_t i) {
    const auto t = static_cast<std::size_t>(i);
    samples[t] = sample_points(plan.config, static_cast<std::int64_t>(t));
    per_trial[t] = certify_sample(samples[t], plan, table);
  });

  TrialsResult res;
  std::map<std::string, std::size_t> slot;
  for (std::size_t t = 0; t < T; ++t) {
    bool all = true;
    for (auto& r : per_trial[t]) {
      all = all && r.pass;
      auto [it, fresh] = slot.emplace(r.event, res.summaries.size());
      if (fresh) res.summaries.push_back(EventSummary{r.event});
      EventSummary& s = res.summaries[it->second];
      s.trials += 1;
      s.passes += r.pass ? 1 : 0;
      s.hard = s.hard && r.hard;
      s.warnings += r.warnings.empty() ? 0 : 1;
      if (s.worst_trial < 0 || r.ratio() > s.worst_ratio) {
        s.worst_ratio = r.ratio();
        s.worst_observed = r.observed;
        s.threshold = r.threshold;
        s.worst_trial = r.trial;
      }
      res.reports.push_back(std::move(r));
    }
    if (all && !res.exists_all_pass) {
      res.exists_all_pass = true;
      res.witness_trial = static_cast<std::int64_t>(t);
      for (Index a : samples[t].atoms) res.witness_atoms.push_back(plan.config.grid.coords(a));
    }
  }
  return res;
}

OrderedJson to_json(const TrialsResult& result) {
  OrderedJson j;
  j["events"] = OrderedJson::array();
  for (const auto& s : result.summaries) {
    OrderedJson e;
    e["event"] = s.event;
    e["passes"] = s.passes;
    e["trials"] = s.trials;
    e["pass_rate"] = s.trials ? static_cast<double>(s.passes) / static_cast<double>(s.trials) : 0.0;
    e["worst_observed"] = s.worst_observed;
    e["threshold"] = s.threshold;
    e["worst_ratio"] = s.worst_ratio;
    e["worst_trial"] = s.worst_trial;
    e["hard"] = s.hard;
    e["trials_with_warnings"] = s.warnings;
    j["events"].push_back(std::move(e));
  }
  j["exists_all_pass"] = result.exists_all_pass;
  j["witness_trial"] = result.witness_trial;
  j["witness_atoms"] = result.witness_atoms;
  return j;
}

}  // namespace salemlab
