#include "salemlab/io/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <set>

#include "salemlab/errors.hpp"
#include "salemlab/grid/torus.hpp"

namespace salemlab {

namespace {

void reject_unknown(const OrderedJson& j, const std::set<std::string>& allowed, const char* what) {
  if (!j.is_object()) throw ConfigurationError(std::string(what) + " must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) throw ConfigurationError(std::string("unknown key '") + key + "' in " + what);
}

template <class T>
T required(const OrderedJson& j, const char* key, const char* what) {
  if (!j.contains(key)) throw ConfigurationError(std::string("missing key '") + key + "' in " + what);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigurationError(std::string("key '") + key + "' in " + what + " has the wrong type");
  }
}

std::uint64_t to_le(std::uint64_t x) {
  if constexpr (std::endian::native == std::endian::big) return __builtin_bswap64(x);
  return x;
}

}  // namespace

OrderedJson measure_to_json(const AtomicMeasure& mu) {
  OrderedJson j;
  j["d"] = mu.d();
  j["N"] = mu.N();
  j["denominator"] = mu.denominator();
  OrderedJson atoms = OrderedJson::array();
  std::vector<Index> x(static_cast<std::size_t>(mu.d()));
  for (Index u : mu.support()) {
    unflatten(u, mu.N(), x);
    atoms.push_back(OrderedJson{{"at", x}, {"count", mu.count(u)}});
  }
  j["atoms"] = std::move(atoms);
  return j;
}

AtomicMeasure measure_from_json(const OrderedJson& j) {
  reject_unknown(j, {"d", "N", "denominator", "atoms"}, "measure");
  const int d = required<int>(j, "d", "measure");
  const Index N = required<Index>(j, "N", "measure");
  const auto den = required<std::int64_t>(j, "denominator", "measure");
  if (den < 1) throw ConfigurationError("measure denominator must be >= 1");
  TorusGrid grid(d, N);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(grid.cell_count()), 0);
  if (!j.contains("atoms") || !j["atoms"].is_array()) throw ConfigurationError("measure needs an 'atoms' array");
  for (const auto& a : j["atoms"]) {
    reject_unknown(a, {"at", "count"}, "atom");
    const auto at = required<std::vector<Index>>(a, "at", "atom");
    const auto c = required<std::int64_t>(a, "count", "atom");
    if (static_cast<int>(at.size()) != d) throw ConfigurationError("atom coordinate length must equal d");
    if (c < 0) throw ConfigurationError("atom counts must be >= 0");
    std::vector<Index> w(at.size());
    for (std::size_t i = 0; i < at.size(); ++i) {
      if (at[i] < 0 || at[i] >= N) throw ConfigurationError("atom coordinate outside [0, N)");
      w[i] = at[i];
    }
    counts[static_cast<std::size_t>(flat_index(w, N))] += c;
  }
  return AtomicMeasure(grid, std::move(counts), den);
}

std::filesystem::path grid_sidecar_path(const std::filesystem::path& bin) {
  auto p = bin;
  p += ".json";
  return p;
}

void write_grid_function(const std::filesystem::path& bin, const GridFunction& f) {
  std::ofstream out(bin, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigurationError("cannot open " + bin.string() + " for writing");
  for (double v : f.values()) {
    const std::uint64_t w = to_le(std::bit_cast<std::uint64_t>(v));
    out.write(reinterpret_cast<const char*>(&w), sizeof w);
  }
  if (!out) throw ConfigurationError("write failed: " + bin.string());
  std::ofstream side(grid_sidecar_path(bin), std::ios::trunc);
  side << OrderedJson{{"d", f.d()}, {"R", f.R()}}.dump() << '\n';
  if (!side) throw ConfigurationError("write failed: " + grid_sidecar_path(bin).string());
}

GridFunction read_grid_function(const std::filesystem::path& bin) {
  std::ifstream side(grid_sidecar_path(bin));
  if (!side) throw ConfigurationError("missing sidecar " + grid_sidecar_path(bin).string());
  OrderedJson header;
  try {
    header = OrderedJson::parse(side);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigurationError("bad sidecar " + grid_sidecar_path(bin).string() + ": " + e.what());
  }
  reject_unknown(header, {"d", "R"}, "grid sidecar");
  const int d = required<int>(header, "d", "grid sidecar");
  const Index R = required<Index>(header, "R", "grid sidecar");
  const Index cells = checked_cell_count(d, R);

  std::ifstream in(bin, std::ios::binary);
  if (!in) throw ConfigurationError("cannot open " + bin.string());
  const auto bytes = std::filesystem::file_size(bin);
  if (bytes != static_cast<std::uintmax_t>(cells) * 8u)
    throw ConfigurationError(bin.string() + " holds " + std::to_string(bytes) + " bytes, expected " +
                             std::to_string(cells * 8));
  std::vector<double> values(static_cast<std::size_t>(cells));
  for (auto& v : values) {
    std::uint64_t w = 0;
    in.read(reinterpret_cast<char*>(&w), sizeof w);
    v = std::bit_cast<double>(to_le(w));
  }
  return GridFunction(d, R, std::move(values));
}

}  // namespace salemlab
