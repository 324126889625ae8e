#include "salemlab/calibrate.hpp"

#include <algorithm>
#include <cmath>

#include "salemlab/errors.hpp"
#include "salemlab/restriction/restriction.hpp"
#include "salemlab/sampler/trials.hpp"

namespace salemlab {

double round_up_significant(double x, int digits) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("rounding needs a finite x > 0");
  const double scale = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(x))));
  return std::ceil(x * scale * (1.0 - 1e-12)) / scale;
}

namespace {

Calibration unit_constants() {
  Calibration c;
  c.point_mass_M0 = c.uniformity_C = c.decay_C1 = c.multiplicity_C2 = c.uniform_C3 = c.annulus_C = 1.0;
  c.version = "pilot";
  return c;
}

// worst observed/threshold per event id prefix
void fold(const TrialsResult& res, const std::string& prefix, double& worst, OrderedJson& log, std::int64_t N) {
  double here = 0.0;
  for (const auto& s : res.summaries)
    if (s.event.rfind(prefix, 0) == 0) here = std::max(here, s.worst_ratio);
  worst = std::max(worst, here);
  log[std::to_string(N)] = here;
}

}  // namespace

Calibration calibrate(const CalibrationPilot& pilot) {
  if (pilot.Ns.size() < 3) throw ConfigurationError("calibration needs pilot runs at three or more N");
  if (pilot.trials < 1 || !(pilot.margin >= 1.0)) throw ConfigurationError("calibration needs trials >= 1, margin >= 1");

  const Calibration unit = unit_constants();
  double M0 = 0, U = 0, C1 = 0, C2 = 0, C3 = 0, A = 0;
  OrderedJson obs = OrderedJson::object();
  for (std::int64_t N : pilot.Ns) {
    const double logN = std::log(static_cast<double>(N));
    {
      TrialPlan plan{SampleConfig{TorusGrid(1, N)}};
      plan.config.beta = 0.5;
      plan.config.atom_count = floor_power(N, 0.5);
      plan.config.seed = pilot.seed;
      plan.config.trial_count = pilot.trials;
      plan.config.max_order = 2;
      plan.calibration = unit;
      plan.events = {EventSpec{.kind = EventKind::configuration, .beta = 0.5}};
      const auto res = run_trials(plan);
      fold(res, "configuration.decay", C1, obs["decay_C1"], N);
      fold(res, "configuration.multiplicity", C2, obs["multiplicity_C2"], N);
      fold(res, "configuration.uniform", C3, obs["uniform_C3"], N);
    }
    {
      TrialPlan plan{SampleConfig{TorusGrid(1, N)}};
      plan.config.atom_count = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(N) * logN)));
      plan.config.seed = pilot.seed + 1;
      plan.config.trial_count = pilot.trials;
      plan.config.max_order = 3;
      plan.calibration = unit;
      plan.events = {EventSpec{.kind = EventKind::point_mass, .ell = 2, .B = 1.0},
                     EventSpec{.kind = EventKind::uniformity, .ell = 3, .kappa = 1}};
      const auto res = run_trials(plan);
      fold(res, "point_mass", M0, obs["point_mass_M0"], N);
      fold(res, "uniformity", U, obs["uniformity_C"], N);
    }
    {
      SampleConfig sc{TorusGrid(1, N)};
      sc.atom_count = floor_power(N, pilot.annulus_beta);
      sc.seed = pilot.seed + 2;
      const AtomicMeasure mu = sample_points(sc, 0).sigma().probability();
      AnnulusParams ap;
      ap.batch = pilot.annulus_batch;
      ap.seed = pilot.seed + 3;
      ap.r = pilot.annulus_radii.front();
      const ApEstimate est = prepare_annulus(mu, ap).ap;
      double here = 0.0;
      for (double r : pilot.annulus_radii) {
        ap.r = r;
        here = std::max(here, annulus_multiplier_check(mu, ap, &est).max_ratio);
      }
      A = std::max(A, here);
      obs["annulus_C"][std::to_string(N)] = here;
    }
  }

  Calibration c;
  c.decay_C1 = round_up_significant(pilot.margin * C1, 2);
  c.multiplicity_C2 = round_up_significant(pilot.margin * C2, 2);
  c.uniform_C3 = round_up_significant(pilot.margin * C3, 2);
  c.point_mass_M0 = round_up_significant(pilot.margin * M0, 2);
  c.annulus_C = round_up_significant(pilot.margin * A, 2);
  c.uniformity_C = pilot.pinned_uniformity;
  if (U > c.uniformity_C) throw ConsistencyError("pilot uniformity ratio exceeds the pinned constant");
  c.version = "1";

  OrderedJson prov;
  prov["rule"] = "constant = margin * max over N of (observed / threshold at constant 1), rounded up to 2 digits";
  prov["margin"] = pilot.margin;
  prov["N"] = pilot.Ns;
  prov["trials"] = pilot.trials;
  prov["seed"] = pilot.seed;
  prov["runs"] = {
      {"configuration", "d=1, beta=1/2, P=floor(N^beta), max order 2"},
      {"point_mass", "d=1, ell=2, B=1, m=floor((N log N)^{1/2})"},
      {"uniformity", "d=1, ell=3, kappa=1, m=floor((N log N)^{1/2}); pinned, pilot recorded"},
      {"annulus", "d=1, beta=" + OrderedJson(pilot.annulus_beta).dump() + ", one sample per N, r in " +
                      OrderedJson(pilot.annulus_radii).dump() + ", batch " + std::to_string(pilot.annulus_batch)},
  };
  prov["observed_ratio"] = obs;
  c.provenance = std::move(prov);
  return c;
}

}  // namespace salemlab
