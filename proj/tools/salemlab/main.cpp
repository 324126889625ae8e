#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "config.hpp"
#include "experiments.hpp"
#include "plot.hpp"
#include "run_dir.hpp"
#include "salemlab/calibrate.hpp"
#include "salemlab/errors.hpp"
#include "salemlab/sampler/sample.hpp"

namespace {

constexpr int kExitUsage = 64;    // bad config or arguments
constexpr int kExitNoInput = 66;  // missing run data
constexpr int kExitSoftware = 70;

using namespace salemlab;
using namespace salemlab::cli;

int cmd_run(const std::string& path) {
  const ExperimentConfig cfg = load_config(path);
  Calibration cal;
  try {
    cal = cfg.calibration ? load_calibration(*cfg.calibration) : default_calibration();
  } catch (const ConfigurationError& e) {
    throw ConfigError(cfg.source, 0, e.what());
  }
  RunOutput out;
  try {
    out = run_experiment(cfg, cal);
  } catch (const DomainError& e) {
    throw ConfigError(cfg.source, cfg.params_line, e.what());
  } catch (const ConfigurationError& e) {
    throw ConfigError(cfg.source, cfg.params_line, e.what());
  }
  const auto dir = write_run(cfg, cal, out);
  const int status = run_status(out);
  std::cout << dir.string() << '\n';
  std::cerr << summary_csv(out.reports);
  return status;
}

int cmd_plot(const std::string& run_dir, const std::string& functional, std::optional<std::int64_t> trial,
             const std::string& out_path) {
  const std::string csv = emit_plotdata(run_dir, functional, trial);
  if (out_path == "-") {
    std::cout << csv;
    return 0;
  }
  const std::string target = out_path.empty() ? (std::filesystem::path(run_dir) / ("plot_" + functional + ".csv")).string()
                                              : out_path;
  std::ofstream(target, std::ios::binary | std::ios::trunc) << csv;
  std::cout << target << '\n';
  return 0;
}

int cmd_primes(Index near, int order, int count) {
  if (near < 2 || order < 0 || count < 1) throw ConfigurationError("primes needs --near >= 2, --factorial-coprime >= 0");
  // admissible: prime, coprime to order!, and N > 2 order (sampler precondition)
  auto ok = [&](Index n) { return n > 2 * order && is_prime(n) && factorial_coprime(n, order); };
  std::vector<Index> below, above;
  for (Index n = near; n >= 2 && static_cast<int>(below.size()) < count; --n)
    if (ok(n)) below.push_back(n);
  for (Index n = near + 1; static_cast<int>(above.size()) < count; ++n)
    if (ok(n)) above.push_back(n);
  for (auto it = below.rbegin(); it != below.rend(); ++it) std::cout << *it << '\t' << (*it - near) << '\n';
  for (Index n : above) std::cout << n << "\t+" << (n - near) << '\n';
  return 0;
}

int cmd_calibrate(const CalibrationPilot& pilot, const std::string& out_path) {
  const Calibration c = calibrate(pilot);
  const std::string text = to_json(c).dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream(out_path, std::ios::trunc) << text;
    std::cout << out_path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"salemlab: finite-N experiments on random sparse measures and Fourier decay"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SALEMLAB_VERSION_STRING);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", config_path, "JSON config file")->required();

  std::string run_dir, functional, plot_out;
  std::optional<std::int64_t> plot_trial;
  auto* plot = app.add_subcommand("plot", "emit plot data from a finished run");
  plot->add_option("run_dir", run_dir)->required();
  plot->add_option("functional", functional, "decay | blocks | holder | multiplier | tail")->required();
  plot->add_option("--trial", plot_trial, "trial to plot (decay)");
  plot->add_option("-o,--out", plot_out, "output path, '-' for stdout (default <run_dir>/plot_<functional>.csv)");

  Index near = 0;
  int order = 0, count = 1;
  auto* primes = app.add_subcommand("primes", "admissible primes near N");
  primes->add_option("--near", near)->required();
  primes->add_option("--factorial-coprime", order, "largest convolution order n; needs gcd(n!, N) = 1")->required();
  primes->add_option("--count", count, "primes on each side")->capture_default_str();

  CalibrationPilot pilot;
  std::string cal_out;
  auto* cal = app.add_subcommand("calibrate", "")->group("");  // hidden
  cal->add_option("--trials", pilot.trials)->capture_default_str();
  cal->add_option("--seed", pilot.seed)->capture_default_str();
  cal->add_option("--N", pilot.Ns)->capture_default_str();
  cal->add_option("--margin", pilot.margin)->capture_default_str();
  cal->add_option("-o,--out", cal_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run) return cmd_run(config_path);
    if (*plot) return cmd_plot(run_dir, functional, plot_trial, plot_out);
    if (*primes) return cmd_primes(near, order, count);
    if (*cal) return cmd_calibrate(pilot, cal_out);
  } catch (const ConfigError& e) {
    std::cerr << "salemlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const MissingRunData& e) {
    std::cerr << "salemlab: " << e.what() << '\n';
    return kExitNoInput;
  } catch (const ConfigurationError& e) {
    std::cerr << "salemlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "salemlab: " << e.what() << '\n';
    return kExitSoftware;
  }
  return kExitUsage;
}
