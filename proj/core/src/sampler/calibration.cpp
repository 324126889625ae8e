#include "salemlab/sampler/calibration.hpp"

#include <fstream>

#include "calibration_data.hpp"
#include "salemlab/errors.hpp"

namespace salemlab {

Calibration calibration_from_json(const OrderedJson& j) {
  Calibration c;
  try {
    const auto& k = j.at("constants");
    c.point_mass_M0 = k.at("point_mass_M0").get<double>();
    c.uniformity_C = k.at("uniformity_C").get<double>();
    c.decay_C1 = k.at("decay_C1").get<double>();
    c.multiplicity_C2 = k.at("multiplicity_C2").get<double>();
    c.uniform_C3 = k.at("uniform_C3").get<double>();
    c.annulus_C = k.at("annulus_C").get<double>();
    c.version = j.at("version").get<std::string>();
    if (j.contains("provenance")) c.provenance = j.at("provenance");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError(std::string("malformed calibration data: ") + e.what());
  }
  return c;
}

OrderedJson to_json(const Calibration& c) {
  OrderedJson j;
  j["version"] = c.version;
  j["constants"]["point_mass_M0"] = c.point_mass_M0;
  j["constants"]["uniformity_C"] = c.uniformity_C;
  j["constants"]["decay_C1"] = c.decay_C1;
  j["constants"]["multiplicity_C2"] = c.multiplicity_C2;
  j["constants"]["uniform_C3"] = c.uniform_C3;
  j["constants"]["annulus_C"] = c.annulus_C;
  j["provenance"] = c.provenance;
  return j;
}

const Calibration& default_calibration() {
  static const Calibration c = calibration_from_json(OrderedJson::parse(detail::kCalibrationDefaults));
  return c;
}

Calibration load_calibration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open calibration file " + path);
  OrderedJson j;
  try {
    j = OrderedJson::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigurationError(path + ": " + e.what());
  }
  return calibration_from_json(j);
}

}  // namespace salemlab
