#include "run_dir.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include <boost/version.hpp>
#include <fftw3.h>

#include "salemlab/errors.hpp"

#ifndef SALEMLAB_VERSION_STRING
#define SALEMLAB_VERSION_STRING "unknown"
#endif

namespace salemlab::cli {

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

OrderedJson make_manifest(const ExperimentConfig& cfg, const Calibration& cal) {
  const std::string config_text = cfg.to_json().dump();
  const std::string cal_text = to_json(cal).dump();
  OrderedJson m;
  m["tool"] = "salemlab";
  m["version"] = SALEMLAB_VERSION_STRING;
  m["experiment"] = to_string(cfg.kind);
  m["seed"] = cfg.seed;
  m["trials"] = cfg.trials;
  m["config_hash"] = content_hash(config_text);
  m["calibration_hash"] = content_hash(cal_text);
  m["calibration_version"] = cal.version;
  m["versions"] = {{"fftw", std::string(fftw_version)},
                   {"boost", std::to_string(BOOST_VERSION / 100000) + "." + std::to_string(BOOST_VERSION / 100 % 1000) +
                                 "." + std::to_string(BOOST_VERSION % 100)},
                   {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
  m["config"] = cfg.to_json();
  m["calibration"] = to_json(cal);
  m["files"] = {"manifest.json", "events.jsonl", "summary.csv"};
  return m;
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw CapacityError("cannot write " + p.string());
}

std::string utc_stamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

}  // namespace

std::filesystem::path write_run(const ExperimentConfig& cfg, const Calibration& cal, const RunOutput& out) {
  OrderedJson manifest = make_manifest(cfg, cal);
  const std::string base = utc_stamp() + "-" + manifest["config_hash"].get<std::string>().substr(0, 12);
  std::filesystem::path dir = std::filesystem::path(cfg.output_dir) / base;
  for (int k = 2; std::filesystem::exists(dir); ++k)
    dir = std::filesystem::path(cfg.output_dir) / (base + "-" + std::to_string(k));
  std::filesystem::create_directories(dir);

  for (const auto& [name, _] : out.files) manifest["files"].push_back(name);
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  write_file(dir / "events.jsonl", to_jsonl(out.reports));
  write_file(dir / "summary.csv", summary_csv(out.reports));
  for (const auto& [name, text] : out.files) write_file(dir / name, text);
  return dir;
}

int run_status(const RunOutput& out) {
  bool soft = false;
  for (const auto& r : out.reports) {
    if (!r.pass && r.hard) return 1;
    if (!r.pass || !r.warnings.empty()) soft = true;
  }
  return soft ? 2 : 0;
}

}  // namespace salemlab::cli
