#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace salemlab::cli {

// Raised when the run directory lacks the data a functional needs (exit 66).
class MissingRunData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// decay | blocks | holder | multiplier | tail
const std::vector<std::string>& plot_functionals();
std::string plot_header(const std::string& functional);

// CSV text for one functional. `trial` pins the decay witness; by default the
// existence witness of the run (or trial 0).
std::string emit_plotdata(const std::filesystem::path& run_dir, const std::string& functional,
                          std::optional<std::int64_t> trial = std::nullopt);

}  // namespace salemlab::cli
