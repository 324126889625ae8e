#pragma once

#include <filesystem>

#include "salemlab/grid/measure.hpp"
#include "salemlab/sampler/report.hpp"

namespace salemlab {

// {"d", "N", "denominator", "atoms": [{"at": [x_0, ...], "count": c}, ...]}
// with atoms in flat-index order. Unknown keys are rejected.
OrderedJson measure_to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const OrderedJson& j);

// Flat binary snapshot: R^d little-endian float64 values, row-major (axis 0
// slowest), plus a sidecar `<path>.json` holding {"d", "R"}.
std::filesystem::path grid_sidecar_path(const std::filesystem::path& bin);
void write_grid_function(const std::filesystem::path& bin, const GridFunction& f);
GridFunction read_grid_function(const std::filesystem::path& bin);

}  // namespace salemlab
