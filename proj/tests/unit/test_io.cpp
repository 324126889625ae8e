#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>

#include "salemlab/errors.hpp"
#include "salemlab/io/io.hpp"

using namespace salemlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  auto p = fs::temp_directory_path() / ("salemlab_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(MeasureJson, RoundTrip2d) {
  std::vector<std::int64_t> counts(25, 0);
  counts[0] = 2;
  counts[7] = 1;   // (1, 2)
  counts[24] = 5;  // (4, 4)
  const AtomicMeasure mu(TorusGrid(2, 5), counts, 8);
  const auto j = measure_to_json(mu);
  EXPECT_EQ(j["atoms"][1]["at"], OrderedJson::parse("[1,2]"));
  EXPECT_EQ(j["atoms"][2]["count"], 5);
  EXPECT_TRUE(measure_from_json(OrderedJson::parse(j.dump())) == mu);
}

TEST(MeasureJson, RejectsUnknownKeysAndBadAtoms) {
  auto j = OrderedJson::parse(R"({"d":1,"N":4,"denominator":1,"atoms":[{"at":[1],"count":1}]})");
  EXPECT_NO_THROW(measure_from_json(j));
  auto extra = j;
  extra["color"] = "red";
  EXPECT_THROW(measure_from_json(extra), ConfigurationError);
  auto oob = j;
  oob["atoms"][0]["at"] = OrderedJson::parse("[4]");
  EXPECT_THROW(measure_from_json(oob), ConfigurationError);
  auto neg = j;
  neg["atoms"][0]["count"] = -1;
  EXPECT_THROW(measure_from_json(neg), ConfigurationError);
}

TEST(GridBinary, RoundTripAndLayout) {
  const auto dir = scratch_dir();
  std::vector<double> v(12);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.5 * static_cast<double>(i) - 1.0 / 3.0;
  const GridFunction f(1, 12, v);
  const auto bin = dir / "f.bin";
  write_grid_function(bin, f);
  EXPECT_EQ(fs::file_size(bin), 96u);
  // first 8 bytes are −1/3 as little-endian IEEE-754
  std::ifstream in(bin, std::ios::binary);
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t w = 0;
  for (int i = 7; i >= 0; --i) w = (w << 8) | b[i];
  double first;
  std::memcpy(&first, &w, 8);
  EXPECT_EQ(first, -1.0 / 3.0);

  const auto g = read_grid_function(bin);
  EXPECT_EQ(g.d(), 1);
  EXPECT_EQ(g.R(), 12);
  for (Index i = 0; i < 12; ++i) EXPECT_EQ(g[i], f[i]);
  fs::remove_all(dir);
}

TEST(GridBinary, SizeMismatchAndMissingSidecar) {
  const auto dir = scratch_dir();
  const auto bin = dir / "g.bin";
  write_grid_function(bin, GridFunction::constant(2, 4, 1.0));
  std::ofstream(grid_sidecar_path(bin), std::ios::trunc) << R"({"d":2,"R":5})";
  EXPECT_THROW(read_grid_function(bin), ConfigurationError);
  fs::remove(grid_sidecar_path(bin));
  EXPECT_THROW(read_grid_function(bin), ConfigurationError);
  fs::remove_all(dir);
}
