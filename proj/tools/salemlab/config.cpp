#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include <rapidjson/error/en.h>
#include <rapidjson/reader.h>

namespace salemlab::cli {

namespace {

// ---- source positions --------------------------------------------------

// JSON pointer -> 1-based line of the value (or key, for members).
using LineMap = std::map<std::string, int>;

struct PositionHandler : rapidjson::BaseReaderHandler<rapidjson::UTF8<>, PositionHandler> {
  const std::string* text = nullptr;
  const rapidjson::StringStream* stream = nullptr;
  LineMap* lines = nullptr;

  struct Frame {
    std::string path;
    bool array = false;
    int next_index = 0;
    std::string key;
  };
  std::vector<Frame> stack;
  std::size_t scanned = 0;
  int line = 1;

  int line_at(std::size_t offset) {
    for (; scanned < offset && scanned < text->size(); ++scanned)
      if ((*text)[scanned] == '\n') ++line;
    return line;
  }
  std::string child_path() {
    if (stack.empty()) return "";
    Frame& f = stack.back();
    if (f.array) return f.path + "/" + std::to_string(f.next_index++);
    return f.path + "/" + f.key;
  }
  bool value() {
    const std::string p = child_path();
    lines->emplace(p, line_at(stream->Tell()));
    return true;
  }
  bool Null() { return value(); }
  bool Bool(bool) { return value(); }
  bool Int(int) { return value(); }
  bool Uint(unsigned) { return value(); }
  bool Int64(std::int64_t) { return value(); }
  bool Uint64(std::uint64_t) { return value(); }
  bool Double(double) { return value(); }
  bool String(const char*, rapidjson::SizeType, bool) { return value(); }
  bool Key(const char* s, rapidjson::SizeType n, bool) {
    stack.back().key.assign(s, n);
    lines->emplace(stack.back().path + "/" + stack.back().key, line_at(stream->Tell()));
    return true;
  }
  bool open(bool array) {
    const std::string p = child_path();
    lines->emplace(p, line_at(stream->Tell()));
    stack.push_back(Frame{p, array, 0, {}});
    return true;
  }
  bool StartObject() { return open(false); }
  bool EndObject(rapidjson::SizeType) {
    stack.pop_back();
    return true;
  }
  bool StartArray() { return open(true); }
  bool EndArray(rapidjson::SizeType) {
    stack.pop_back();
    return true;
  }
};

int line_of_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

LineMap locate(const std::string& text, const std::string& source) {
  LineMap lines;
  PositionHandler h;
  rapidjson::StringStream ss(text.c_str());
  h.text = &text;
  h.stream = &ss;
  h.lines = &lines;
  rapidjson::Reader reader;
  const auto ok = reader.Parse<rapidjson::kParseFullPrecisionFlag>(ss, h);
  if (!ok)
    throw ConfigError(source, line_of_offset(text, ok.Offset()),
                      std::string("invalid JSON: ") + rapidjson::GetParseError_En(ok.Code()));
  return lines;
}

// ---- schema ------------------------------------------------------------

enum class T { integer, positive, number, boolean, string, ints, numbers, object, objects };

struct Field;
struct Schema {
  std::vector<Field> fields;
  std::string discriminator;               // objects: per-variant fields keyed by this member
  std::map<std::string, Schema> variants;  // discriminator value -> schema (without the discriminator)
};
struct Field {
  std::string key;
  T type;
  Schema sub = {};
  bool optional = false;
};

Schema S(std::vector<Field> f) { return Schema{std::move(f), {}, {}}; }

const Schema& params_schema(ExperimentKind kind) {
  static const std::map<ExperimentKind, Schema> table = [] {
    std::map<ExperimentKind, Schema> t;
    Schema events;
    events.discriminator = "kind";
    events.variants = {
        {"fourier_decay", S({})},
        {"cube_fixed", S({{"ell", T::integer}, {"eps", T::number}, {"all_prefixes", T::boolean}})},
        {"cube_log", S({{"ell", T::integer}, {"beta", T::number}})},
        {"point_mass", S({{"ell", T::integer}, {"B", T::number}})},
        {"uniformity", S({{"ell", T::integer}, {"kappa", T::integer}, {"all_prefixes", T::boolean}})},
        {"configuration", S({{"beta", T::number}})},
    };
    t[ExperimentKind::sample_certify] = S({{"d", T::positive},
                                           {"N", T::positive},
                                           {"beta", T::number},
                                           {"atom_count", T::positive},
                                           {"h", T::positive},
                                           {"max_order", T::positive},
                                           {"events", T::objects, events}});
    t[ExperimentKind::transfer] = S({{"d", T::positive},
                                     {"m", T::positive},
                                     {"k", T::positive},
                                     {"alpha", T::number},
                                     {"beta", T::number},
                                     {"max_order", T::positive},
                                     {"refine", T::positive},
                                     {"eta", T::number},
                                     {"psi", T::string}});
    Schema terms;
    terms.fields = {{"freq", T::integer}, {"re", T::number}, {"im", T::number}};
    t[ExperimentKind::approx_step] = S({{"m", T::ints},
                                        {"k", T::positive},
                                        {"alpha", T::number},
                                        {"beta", T::number},
                                        {"max_order", T::positive},
                                        {"refine", T::positive},
                                        {"psi", T::string},
                                        {"net_spacing", T::number},
                                        {"g", T::objects, terms}});
    t[ExperimentKind::restrict] = S({{"d", T::positive},
                                     {"N", T::positive},
                                     {"atom_count", T::positive},
                                     {"orders", T::ints},
                                     {"instances", T::positive},
                                     {"ap_p", T::numbers},
                                     {"ambient", T::integer}});
    t[ExperimentKind::multiplier] = S({{"N", T::positive},
                                       {"atom_count", T::positive},
                                       {"p", T::number},
                                       {"q", T::number},
                                       {"radii", T::numbers},
                                       {"oversample", T::positive},
                                       {"n_der", T::positive},
                                       {"batch", T::positive},
                                       {"decomposition", T::boolean}});
    t[ExperimentKind::energy] = S({{"Ns", T::ints},
                                   {"beta", T::number},
                                   {"gamma", T::number},
                                   {"alpha", T::number},
                                   {"rhos", T::numbers}});
    Schema mc;
    mc.discriminator = "kind";
    const Schema mc_fields = S({{"m", T::positive}, {"N", T::positive}, {"u", T::integer},
                                {"trials", T::positive}, {"ts", T::numbers}});
    mc.variants = {{"rademacher", mc_fields}, {"character", mc_fields}};
    Schema mgf;
    mgf.fields = {{"values", T::numbers}, {"probs", T::numbers}, {"a", T::number},
                  {"t_min", T::number},   {"t_max", T::number},  {"points", T::positive}};
    t[ExperimentKind::concentration] =
        S({{"small_summation", T::object, S({{"m_max", T::positive}, {"ps", T::numbers}})},
           {"continuity", T::object, S({{"A", T::numbers}, {"delta", T::numbers}})},
           {"monte_carlo", T::objects, mc},
           {"mgf", T::objects, mgf},
           {"factorial", T::object, S({{"T_max", T::number}, {"T_step", T::number}, {"extra", T::positive}})}});
    return t;
  }();
  return table.at(kind);
}

const std::map<std::string, ExperimentKind>& kind_names() {
  static const std::map<std::string, ExperimentKind> m = {
      {"sample-certify", ExperimentKind::sample_certify}, {"transfer", ExperimentKind::transfer},
      {"approx-step", ExperimentKind::approx_step},       {"restrict", ExperimentKind::restrict},
      {"multiplier", ExperimentKind::multiplier},         {"energy", ExperimentKind::energy},
      {"concentration", ExperimentKind::concentration}};
  return m;
}

class Validator {
 public:
  Validator(const LineMap& lines, std::string source) : lines_(lines), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    // fall back to the nearest located ancestor
    std::string p = path;
    while (true) {
      if (auto it = lines_.find(p); it != lines_.end()) throw ConfigError(source_, it->second, msg);
      if (p.empty()) break;
      p = p.substr(0, p.rfind('/'));
    }
    throw ConfigError(source_, 0, msg);
  }

  std::string where(const std::string& path) const { return path.empty() ? "top level" : "'" + path + "'"; }

  OrderedJson value(const OrderedJson& v, const Field& f, const std::string& path) const {
    auto want = [&](bool ok, const char* what) {
      if (!ok) fail(path, where(path) + " must be " + what);
    };
    switch (f.type) {
      case T::integer:
        want(v.is_number_integer(), "an integer");
        return v;
      case T::positive:
        want(v.is_number_integer() && v.get<std::int64_t>() >= 1, "an integer >= 1");
        return v;
      case T::number:
        want(v.is_number(), "a number");
        return v.get<double>();
      case T::boolean:
        want(v.is_boolean(), "true or false");
        return v;
      case T::string:
        want(v.is_string(), "a string");
        return v;
      case T::ints: {
        want(v.is_array(), "an array of integers");
        for (std::size_t i = 0; i < v.size(); ++i)
          if (!v[i].is_number_integer()) fail(path + "/" + std::to_string(i), where(path) + " must hold integers");
        return v;
      }
      case T::numbers: {
        want(v.is_array(), "an array of numbers");
        OrderedJson out = OrderedJson::array();
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (!v[i].is_number()) fail(path + "/" + std::to_string(i), where(path) + " must hold numbers");
          out.push_back(v[i].get<double>());
        }
        return out;
      }
      case T::object:
        return object(v, f.sub, path);
      case T::objects: {
        want(v.is_array(), "an array of objects");
        OrderedJson out = OrderedJson::array();
        for (std::size_t i = 0; i < v.size(); ++i) out.push_back(object(v[i], f.sub, path + "/" + std::to_string(i)));
        return out;
      }
    }
    return v;
  }

  OrderedJson object(const OrderedJson& v, const Schema& schema, const std::string& path) const {
    if (!v.is_object()) fail(path, where(path) + " must be an object");
    OrderedJson out = OrderedJson::object();
    const Schema* s = &schema;
    std::vector<std::string> known;
    if (!schema.discriminator.empty()) {
      const auto& key = schema.discriminator;
      if (!v.contains(key) || !v[key].is_string()) fail(path, where(path) + " needs a string '" + key + "'");
      const std::string tag = v[key].get<std::string>();
      auto it = schema.variants.find(tag);
      if (it == schema.variants.end()) {
        std::string options;
        for (const auto& [name, _] : schema.variants) options += (options.empty() ? "" : ", ") + name;
        fail(path + "/" + key, "unknown " + key + " '" + tag + "' (expected one of: " + options + ")");
      }
      out[key] = tag;
      known.push_back(key);
      s = &it->second;
    }
    for (const auto& f : s->fields) known.push_back(f.key);
    for (const auto& [key, _] : v.items())
      if (std::find(known.begin(), known.end(), key) == known.end())
        fail(path + "/" + key, "unknown key '" + key + "' in " + where(path));
    for (const auto& f : s->fields) {
      if (!v.contains(f.key)) {
        if (f.optional) continue;
        fail(path, "missing key '" + f.key + "' in " + where(path));
      }
      out[f.key] = value(v[f.key], f, path + "/" + f.key);
    }
    return out;
  }

 private:
  const LineMap& lines_;
  std::string source_;
};

}  // namespace

ConfigError::ConfigError(std::string file, int line, const std::string& message)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " + message), file_(std::move(file)), line_(line) {}

std::string to_string(ExperimentKind kind) {
  for (const auto& [name, k] : kind_names())
    if (k == kind) return name;
  return "?";
}

OrderedJson ExperimentConfig::to_json() const {
  OrderedJson j;
  j["experiment"] = to_string(kind);
  j["seed"] = seed;
  j["trials"] = trials;
  j["output_dir"] = output_dir;
  if (calibration) j["calibration"] = *calibration;
  j["params"] = params;
  return j;
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  const LineMap lines = locate(text, source);
  OrderedJson j = OrderedJson::parse(text);  // already known to be valid JSON
  Validator v(lines, source);

  if (!j.is_object()) v.fail("", "config must be a JSON object");
  if (!j.contains("experiment") || !j["experiment"].is_string()) v.fail("", "missing string key 'experiment'");
  const std::string name = j["experiment"].get<std::string>();
  auto it = kind_names().find(name);
  if (it == kind_names().end()) {
    std::string options;
    for (const auto& [n, _] : kind_names()) options += (options.empty() ? "" : ", ") + n;
    v.fail("/experiment", "unknown experiment '" + name + "' (expected one of: " + options + ")");
  }

  Schema top;
  top.fields = {{"experiment", T::string},
                {"seed", T::integer},
                {"trials", T::positive},
                {"output_dir", T::string},
                {"calibration", T::string, {}, true},
                {"params", T::object, params_schema(it->second)}};
  const OrderedJson c = v.object(j, top, "");
  if (c["seed"].get<std::int64_t>() < 0) v.fail("/seed", "'seed' must be >= 0");

  ExperimentConfig cfg;
  cfg.kind = it->second;
  cfg.seed = c["seed"].get<std::uint64_t>();
  cfg.trials = c["trials"].get<std::int64_t>();
  cfg.output_dir = c["output_dir"].get<std::string>();
  if (c.contains("calibration")) cfg.calibration = c["calibration"].get<std::string>();
  cfg.params = c["params"];
  cfg.source = source;
  if (auto pl = lines.find("/params"); pl != lines.end()) cfg.params_line = pl->second;
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot read config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace salemlab::cli
