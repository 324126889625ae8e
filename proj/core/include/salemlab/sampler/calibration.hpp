#pragma once

#include <string>

#include "salemlab/sampler/report.hpp"

namespace salemlab {

// Explicit stand-ins for constants that are only known to exist. Values are
// derived by `salemlab calibrate` from pilot runs and stored in
// data/calibration_defaults.json together with their derivation.
struct Calibration {
  double point_mass_M0 = 0.0;   // max_u σ^{*ℓ}({u}) <= M0 log N
  double uniformity_C = 0.0;    // uniformity statistic <= C (log N)^{1+κ/2}
  double decay_C1 = 0.0;        // sup_{r≠0} |μ̂(r)| <= C1 N^{−β/2} (log N)^{1/2}
  double multiplicity_C2 = 0.0; // μ^{*ℓ}(Q) <= C2 N^{−ℓβ} log N
  double uniform_C3 = 0.0;      // high-power deviation constant
  double annulus_C = 0.0;       // annulus multiplier ratio <= C
  std::string version;
  OrderedJson provenance = OrderedJson::object();
};

// Compiled-in copy of data/calibration_defaults.json.
const Calibration& default_calibration();

Calibration calibration_from_json(const OrderedJson& j);
OrderedJson to_json(const Calibration& c);
// Throws ConfigurationError if the file is missing or malformed.
Calibration load_calibration(const std::string& path);

}  // namespace salemlab
