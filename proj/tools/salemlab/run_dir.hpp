#pragma once

#include <filesystem>
#include <string>

#include "config.hpp"
#include "experiments.hpp"

namespace salemlab::cli {

// FNV-1a 64-bit, hex.
std::string content_hash(const std::string& bytes);

// manifest.json: config (canonical), config hash, seed, calibration and its
// hash, library versions. No wall-clock time and no thread count, so
// repeated runs produce identical manifests.
OrderedJson make_manifest(const ExperimentConfig& cfg, const Calibration& cal);

// Writes runs/<UTC timestamp>-<config hash prefix>/ under cfg.output_dir and
// returns the directory.
std::filesystem::path write_run(const ExperimentConfig& cfg, const Calibration& cal, const RunOutput& out);

// Exit status of a finished run: 1 on any hard failure, 2 if only soft
// failures or warnings remain, else 0.
int run_status(const RunOutput& out);

}  // namespace salemlab::cli
