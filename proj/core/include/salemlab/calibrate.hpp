#pragma once

#include <cstdint>
#include <vector>

#include "salemlab/sampler/calibration.hpp"

namespace salemlab {

// Pilot runs behind the calibration defaults. Every certifier runs with its
// constant set to 1, so observed/threshold is the constant the run needed;
// the default is `margin` times the worst such ratio over all N, rounded up
// to two significant digits. uniformity_C stays pinned at `pinned_uniformity`
// and its pilot ratios are only recorded.
struct CalibrationPilot {
  std::vector<std::int64_t> Ns{251, 509, 1009};
  std::int64_t trials = 20;
  std::uint64_t seed = 20240601;
  double margin = 2.0;
  double pinned_uniformity = 20.0;
  double annulus_beta = 0.5;
  std::vector<double> annulus_radii{0.125, 0.0625, 0.03125};
  int annulus_batch = 20;
};

Calibration calibrate(const CalibrationPilot& pilot);

// Rounds x > 0 up to `digits` significant decimal digits.
double round_up_significant(double x, int digits);

}  // namespace salemlab
