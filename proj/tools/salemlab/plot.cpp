#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "config.hpp"
#include "experiments.hpp"
#include "salemlab/errors.hpp"
#include "salemlab/grid/dft.hpp"
#include "salemlab/sampler/sample.hpp"

namespace salemlab::cli {

namespace {

using J = OrderedJson;

std::vector<J> read_events(const std::filesystem::path& dir) {
  std::ifstream in(dir / "events.jsonl");
  if (!in) throw MissingRunData("no events.jsonl in " + dir.string());
  std::vector<J> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(J::parse(line));
  return out;
}

J read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw MissingRunData("missing " + p.string());
  return J::parse(in);
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

std::string decay(const std::filesystem::path& dir, std::optional<std::int64_t> pinned) {
  const J manifest = read_json(dir / "manifest.json");
  const J cfg = manifest.at("config");
  if (cfg.at("experiment") != "sample-certify") throw MissingRunData("decay needs a sample-certify run");
  const auto events = read_events(dir);

  std::int64_t trial = 0;
  if (pinned) {
    trial = *pinned;
  } else if (std::filesystem::exists(dir / "aggregate.json")) {
    const auto w = read_json(dir / "aggregate.json").value("witness_trial", std::int64_t{-1});
    if (w >= 0) trial = w;
  }
  double threshold = std::nan("");
  for (const auto& e : events)
    if (e.at("trial") == trial && (e.at("event") == "fourier_decay" || e.at("event") == "configuration.decay"))
      threshold = e.at("threshold").get<double>();
  if (std::isnan(threshold)) throw MissingRunData("no Fourier decay report for trial " + std::to_string(trial));

  const J& p = cfg.at("params");
  SampleConfig c{TorusGrid(p.at("d").get<int>(), p.at("N").get<Index>())};
  c.beta = p.at("beta").get<double>();
  c.atom_count = p.at("atom_count").get<std::int64_t>();
  c.seed = cfg.at("seed").get<std::uint64_t>();
  const Spectrum sp = dft(sample_points(c, trial).sigma().probability());

  std::vector<std::pair<double, double>> rows;
  for (Index k = 1; k < sp.size(); ++k) rows.emplace_back(sp.frequency_norm(k), std::abs(sp[k]));
  std::stable_sort(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.first < b.first; });
  std::ostringstream os;
  os << plot_header("decay") << '\n';
  for (const auto& [r, v] : rows) os << num(r) << ',' << num(v) << ',' << num(threshold) << '\n';
  return os.str();
}

std::string tidy(const std::vector<std::tuple<double, double, std::string>>& rows, const std::string& functional) {
  if (rows.empty()) throw MissingRunData("run has no data for '" + functional + "'");
  std::ostringstream os;
  os << plot_header(functional) << '\n';
  for (const auto& [x, y, s] : rows) os << num(x) << ',' << num(y) << ',' << s << '\n';
  return os.str();
}

std::string blocks(const std::filesystem::path& dir) {
  std::map<double, std::pair<double, int>> random;
  std::vector<std::tuple<double, double, std::string>> rows;
  for (const auto& e : read_events(dir)) {
    const auto ev = e.at("event").get<std::string>();
    if (ev != "blocks.random" && ev != "blocks.comb") continue;
    const auto rho = e.at("extras").at("rho").get<std::vector<double>>();
    const auto val = e.at("extras").at("value").get<std::vector<double>>();
    for (std::size_t i = 0; i < rho.size(); ++i) {
      if (ev == "blocks.comb") {
        rows.emplace_back(rho[i], val[i], "comb");
      } else {
        random[rho[i]].first += val[i];
        random[rho[i]].second += 1;
      }
    }
  }
  for (const auto& [rho, acc] : random) rows.emplace_back(rho, acc.first / acc.second, "random");
  return tidy(rows, "blocks");
}

std::string holder(const std::filesystem::path& dir) {
  std::vector<std::tuple<double, double, std::string>> rows;
  for (const auto& e : read_events(dir)) {
    const auto ev = e.at("event").get<std::string>();
    const std::string trial = "trial " + std::to_string(e.at("trial").get<std::int64_t>());
    if (starts_with(ev, "fm.holder.n")) {
      rows.emplace_back(std::stod(ev.substr(11)), e.at("observed").get<double>(), trial);
    } else if (starts_with(ev, "approx.m") && ev != "approx.trend") {
      const auto& x = e.at("extras");
      const auto orders = x.at("holder_orders").get<std::vector<int>>();
      const auto terms = x.at("holder_terms").get<std::vector<double>>();
      for (std::size_t i = 0; i < orders.size(); ++i)
        rows.emplace_back(x.at("m").get<double>(), terms[i], trial + " n=" + std::to_string(orders[i]));
    }
  }
  return tidy(rows, "holder");
}

std::string multiplier(const std::filesystem::path& dir) {
  std::vector<std::tuple<double, double, std::string>> rows;
  for (const auto& e : read_events(dir))
    if (e.at("event") == "multiplier.annulus")
      rows.emplace_back(e.at("extras").at("r").get<double>(), e.at("observed").get<double>(),
                        "trial " + std::to_string(e.at("trial").get<std::int64_t>()));
  return tidy(rows, "multiplier");
}

std::string tail(const std::filesystem::path& dir) {
  std::vector<std::tuple<double, double, std::string>> rows;
  for (const auto& e : read_events(dir)) {
    const auto ev = e.at("event").get<std::string>();
    if (!starts_with(ev, "concentration.mc.")) continue;
    const std::string kind = ev.substr(17);
    const double t = e.at("extras").at("t").get<double>();
    rows.emplace_back(t, e.at("extras").at("empirical").get<double>(), kind + " empirical");
    rows.emplace_back(t, e.at("observed").get<double>(), kind + " ci_high");
    rows.emplace_back(t, e.at("threshold").get<double>(), kind + " bound");
  }
  return tidy(rows, "tail");
}

}  // namespace

const std::vector<std::string>& plot_functionals() {
  static const std::vector<std::string> f = {"decay", "blocks", "holder", "multiplier", "tail"};
  return f;
}

std::string plot_header(const std::string& functional) {
  if (functional == "decay") return "abs_r,abs_mu_hat,threshold";
  if (std::find(plot_functionals().begin(), plot_functionals().end(), functional) != plot_functionals().end())
    return "x,y,series";
  throw ConfigurationError("unknown plot functional '" + functional + "'");
}

std::string emit_plotdata(const std::filesystem::path& run_dir, const std::string& functional,
                          std::optional<std::int64_t> trial) {
  plot_header(functional);  // validates the name
  if (!std::filesystem::is_directory(run_dir)) throw MissingRunData("no run directory " + run_dir.string());
  if (functional == "decay") return decay(run_dir, trial);
  if (functional == "blocks") return blocks(run_dir);
  if (functional == "holder") return holder(run_dir);
  if (functional == "multiplier") return multiplier(run_dir);
  return tail(run_dir);
}

}  // namespace salemlab::cli
