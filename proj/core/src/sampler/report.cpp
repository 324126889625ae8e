#include "salemlab/sampler/report.hpp"

namespace salemlab {

OrderedJson to_json(const EventReport& r) {
  OrderedJson j;
  j["event"] = r.event;
  j["certifies"] = r.certifies;
  j["trial"] = r.trial;
  j["trial_seed"] = r.trial_seed;
  j["threshold"] = r.threshold;
  j["observed"] = r.observed;
  j["pass"] = r.pass;
  j["hard"] = r.hard;
  j["witness"] = r.witness;
  j["warnings"] = r.warnings;
  if (!r.extras.empty()) j["extras"] = r.extras;
  return j;
}

EventReport report_from_json(const OrderedJson& j) {
  EventReport r;
  r.event = j.at("event").get<std::string>();
  r.certifies = j.at("certifies").get<std::string>();
  r.trial = j.at("trial").get<std::int64_t>();
  r.trial_seed = j.at("trial_seed").get<std::uint64_t>();
  r.threshold = j.at("threshold").get<double>();
  r.observed = j.at("observed").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.hard = j.at("hard").get<bool>();
  r.witness = j.at("witness");
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  if (j.contains("extras")) r.extras = j.at("extras");
  return r;
}

std::string to_jsonl(const std::vector<EventReport>& reports) {
  std::string out;
  for (const auto& r : reports) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

}  // namespace salemlab
