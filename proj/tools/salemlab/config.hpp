#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "salemlab/sampler/report.hpp"

namespace salemlab::cli {

enum class ExperimentKind { sample_certify, transfer, approx_step, restrict, multiplier, energy, concentration };

std::string to_string(ExperimentKind kind);

// Invalid config with the 1-based source line it refers to (0 = unknown).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string file, int line, const std::string& message);
  int line() const { return line_; }
  const std::string& file() const { return file_; }

 private:
  std::string file_;
  int line_;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::sample_certify;
  std::uint64_t seed = 0;
  std::int64_t trials = 1;
  std::string output_dir = "runs";
  std::optional<std::string> calibration;  // path; absent = compiled-in defaults
  OrderedJson params;                      // validated against the kind's schema
  std::string source;                      // for error messages
  int params_line = 0;

  // Canonical form: fixed key order, every parameter present.
  OrderedJson to_json() const;
};

// Validates `text` (rejecting unknown keys, missing keys and wrong types).
// `source` names the text in error messages.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

}  // namespace salemlab::cli
