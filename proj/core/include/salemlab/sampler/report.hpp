#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace salemlab {

using OrderedJson = nlohmann::ordered_json;

// Per-trial certificate. `pass` is always observed <= threshold; `hard`
// marks events whose failure should fail a run (as opposed to diagnostics).
struct EventReport {
  std::string event;
  std::string certifies;  // the inequality being checked, in words
  double threshold = 0.0;
  double observed = 0.0;
  OrderedJson witness = OrderedJson::object();
  bool pass = false;
  bool hard = true;
  std::vector<std::string> warnings;  // soft, e.g. asymptotic regime not reached
  std::int64_t trial = -1;
  std::uint64_t trial_seed = 0;
  OrderedJson extras = OrderedJson::object();

  void decide() { pass = observed <= threshold; }
  double ratio() const { return threshold > 0.0 ? observed / threshold : observed; }
};

OrderedJson to_json(const EventReport& r);
EventReport report_from_json(const OrderedJson& j);

// One JSON object per line, in the given order.
std::string to_jsonl(const std::vector<EventReport>& reports);

}  // namespace salemlab
