#include <gtest/gtest.h>

#include <fstream>

#include "salemlab/calibrate.hpp"
#include "salemlab/errors.hpp"

using namespace salemlab;

TEST(RoundUp, SignificantDigits) {
  EXPECT_DOUBLE_EQ(round_up_significant(3.8005, 2), 3.9);
  EXPECT_DOUBLE_EQ(round_up_significant(0.00043614, 2), 0.00044);
  EXPECT_DOUBLE_EQ(round_up_significant(2.0, 2), 2.0);
  EXPECT_DOUBLE_EQ(round_up_significant(123.4, 1), 200.0);
  EXPECT_THROW(round_up_significant(0.0, 2), DomainError);
}

TEST(CalibrationDefaults, ReproducedByPilot) {
  std::ifstream in(std::string(SALEMLAB_DATA_DIR) + "/calibration_defaults.json");
  const Calibration shipped = calibration_from_json(OrderedJson::parse(in));
  const Calibration fresh = calibrate(CalibrationPilot{});
  EXPECT_EQ(to_json(fresh).dump(), to_json(shipped).dump());
  // the compiled-in copy is the same file
  EXPECT_EQ(to_json(default_calibration()).dump(), to_json(shipped).dump());
}

TEST(CalibrationDefaults, PilotNeedsThreeN) {
  CalibrationPilot p;
  p.Ns = {251, 509};
  EXPECT_THROW(calibrate(p), ConfigurationError);
}
