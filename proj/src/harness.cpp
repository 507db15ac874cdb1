#include "linstab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "experiments.hpp"
#include "linstab/io.hpp"

namespace linstab {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t SeedTree::seed(std::string_view name) const {
  std::uint64_t state = root_ ^ fnv1a64(name);
  splitmix64(state);
  return splitmix64(state);
}

ScalarField random_bv_field(std::mt19937_64& rng, int jumps, double amplitude, double x0,
                            double x1) {
  if (jumps < 1) throw InvalidArgument("random_bv_field: need at least one jump");
  std::uniform_real_distribution<double> pos(x0, x1), val(-amplitude, amplitude);
  std::vector<double> b(static_cast<std::size_t>(jumps));
  for (auto& x : b) x = pos(rng);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  std::vector<double> v{0.0};
  for (std::size_t i = 1; i < b.size(); ++i) v.push_back(val(rng));
  v.push_back(0.0);
  return ScalarField(b, v);
}

// --- schema -----------------------------------------------------------------

namespace {

using nlohmann::json;

enum class Type { kNumber, kInteger, kString, kBool, kObject, kState, kNumberList, kStateList, kEnum };

struct Rule {
  const char* key;
  Type type;
  double lo = -INFINITY;
  double hi = INFINITY;
  bool lo_open = false;
  bool hi_open = false;
  std::vector<std::string> choices = {};
  const char* doc = "";
};

const std::vector<std::string>& kinds() {
  static const std::vector<std::string> k{"riemann",        "front-tracking",      "glimm",
                                          "linear-transport", "classification-scan", "stability-ledger",
                                          "monotonicity",   "dlm",                 "superposition"};
  return k;
}

const std::vector<Rule>& top_rules() {
  static const std::vector<Rule> r{
      {"schema_version", Type::kInteger, 1, 1, false, false, {}, "must be 1"},
      {"name", Type::kString, -INFINITY, INFINITY, false, false, {}, "scenario name [a-z0-9-]+"},
      {"kind", Type::kEnum, -INFINITY, INFINITY, false, false, kinds(), "experiment kind"},
      {"description", Type::kString},
      {"flux", Type::kObject},
      {"initial", Type::kObject},
      {"params", Type::kObject},
      {"seed", Type::kInteger, 0, 1.8446744073709552e19, false, true, {}, "64-bit root seed"},
      {"output", Type::kString, -INFINITY, INFINITY, false, false, {}, "output directory"},
  };
  return r;
}

const std::vector<Rule>& flux_rules() {
  static const std::vector<Rule> r{
      {"type", Type::kEnum, -INFINITY, INFINITY, false, false,
       {"burgers", "cubic", "linear", "p-system", "p-system-linear", "p-system-inflection", "euler",
        "model-nonconservative"}},
      {"speed", Type::kNumber, -1e3, 1e3, false, false, {}, "linear flux speed"},
      {"gamma", Type::kNumber, 0.0, 10.0, true, false, {}, "pressure exponent"},
      {"kappa", Type::kNumber, 0.0, 1e3, true, false, {}, "euler pressure constant"},
  };
  return r;
}

const std::vector<Rule>& initial_rules() {
  static const std::vector<Rule> r{
      {"type", Type::kEnum, -INFINITY, INFINITY, false, false,
       {"riemann", "piecewise", "random-bv", "transport-riemann", "random-ball", "random-jumps",
        "triple", "witness"}},
      {"left", Type::kState},
      {"right", Type::kState},
      {"x0", Type::kNumber, -1e6, 1e6},
      {"breakpoints", Type::kNumberList},
      {"values", Type::kStateList},
      {"count", Type::kInteger, 1, 100000},
      {"jumps", Type::kInteger, 1, 1000},
      {"amplitude", Type::kNumber, 0.0, 100.0, true},
      {"psi_l", Type::kNumber, -1e6, 1e6},
      {"psi_r", Type::kNumber, -1e6, 1e6},
      {"a_minus", Type::kNumber, -1e6, 1e6},
      {"a_plus", Type::kNumber, -1e6, 1e6},
      {"lambda", Type::kNumber, -1e6, 1e6},
      {"center", Type::kState},
      {"radius", Type::kNumber, 0.0, 1.0, true},
      {"a", Type::kNumber, 0.0, 1.0, true, true},
      {"v_left", Type::kNumber, -1e6, 1e6},
      {"u_l", Type::kState},
      {"eps1", Type::kNumber, -10.0, 10.0},
  };
  return r;
}

const std::vector<Rule>& param_rules() {
  static const std::vector<Rule> r{
      {"delta", Type::kNumber, 0.0, 1.0, true, false, {}, "front-tracking flux grid spacing"},
      {"h", Type::kNumber, 0.0, 1.0, true, false, {}, "glimm cell width"},
      {"h_list", Type::kNumberList, 0.0, 1.0, true, false, {}, "glimm refinement levels"},
      {"cfl", Type::kNumber, 0.0, 0.5, true, false, {}, "glimm CFL number"},
      {"t_max", Type::kNumber, 0.0, 100.0, true, false, {}, "final time"},
      {"kappa", Type::kNumber, 0.0, 1.0, true, true, {}, "dominance margin"},
      {"w_min", Type::kNumber, 0.0, 1e6, true},
      {"w_max", Type::kNumber, 0.0, 1e6, true},
      {"quad_order", Type::kInteger, 1, 256},
      {"grid_points", Type::kInteger, 2, 10001},
      {"eps_max", Type::kNumber, 0.0, 1.0, true},
      {"test_functions", Type::kInteger, 1, 1000},
      {"time_points", Type::kInteger, 10, 1000000},
      {"phi_star", Type::kNumberList, 0.0, 1.0},
  };
  return r;
}

int line_of(const std::string& text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

int line_of_byte(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

struct Validator {
  const std::string& text;
  const std::string& source;

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw ConfigError(msg, source, line_of(text, key));
  }

  void number_in_range(const Rule& r, const std::string& where, double x) const {
    const bool lo_ok = r.lo_open ? x > r.lo : x >= r.lo;
    const bool hi_ok = r.hi_open ? x < r.hi : x <= r.hi;
    if (!std::isfinite(x) || !lo_ok || !hi_ok) {
      std::ostringstream s;
      s << where << " = " << x << " outside " << (r.lo_open ? "(" : "[") << r.lo << ", " << r.hi
        << (r.hi_open ? ")" : "]");
      fail(r.key, s.str());
    }
  }

  void check_state(const Rule& r, const std::string& where, const json& v) const {
    if (v.is_number()) {
      number_in_range(r, where, v.get<double>());
    } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      number_in_range(r, where, v[0].get<double>());
      number_in_range(r, where, v[1].get<double>());
    } else {
      fail(r.key, where + " must be a number or a pair of numbers");
    }
  }

  void check(const json& obj, const std::vector<Rule>& rules, const std::string& section) const {
    if (!obj.is_object()) fail(section, section + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      const auto rule = std::find_if(rules.begin(), rules.end(),
                                     [&](const Rule& r) { return it.key() == r.key; });
      if (rule == rules.end()) fail(it.key(), "unknown key \"" + it.key() + "\" in " + section);
      const std::string where = section + "." + it.key();
      const json& v = it.value();
      switch (rule->type) {
        case Type::kNumber:
          if (!v.is_number()) fail(rule->key, where + " must be a number");
          number_in_range(*rule, where, v.get<double>());
          break;
        case Type::kInteger:
          if (!v.is_number_integer()) fail(rule->key, where + " must be an integer");
          number_in_range(*rule, where, v.get<double>());
          break;
        case Type::kString:
          if (!v.is_string()) fail(rule->key, where + " must be a string");
          break;
        case Type::kObject:
          if (!v.is_object()) fail(rule->key, where + " must be an object");
          break;
        case Type::kBool:
          if (!v.is_boolean()) fail(rule->key, where + " must be a boolean");
          break;
        case Type::kEnum: {
          if (!v.is_string()) fail(rule->key, where + " must be a string");
          const auto s = v.get<std::string>();
          if (std::find(rule->choices.begin(), rule->choices.end(), s) == rule->choices.end()) {
            fail(rule->key, where + " has unknown value \"" + s + "\"");
          }
          break;
        }
        case Type::kState:
          check_state(*rule, where, v);
          break;
        case Type::kNumberList:
          if (!v.is_array()) fail(rule->key, where + " must be an array of numbers");
          for (const auto& x : v) {
            if (!x.is_number()) fail(rule->key, where + " must be an array of numbers");
            number_in_range(*rule, where, x.get<double>());
          }
          break;
        case Type::kStateList:
          if (!v.is_array()) fail(rule->key, where + " must be an array");
          for (const auto& x : v) check_state(*rule, where, x);
          break;
      }
    }
  }
};

json rules_schema(const std::vector<Rule>& rules) {
  json props = json::object();
  for (const auto& r : rules) {
    json p;
    switch (r.type) {
      case Type::kNumber:
        p["type"] = "number";
        break;
      case Type::kInteger:
        p["type"] = "integer";
        break;
      case Type::kString:
        p["type"] = "string";
        break;
      case Type::kBool:
        p["type"] = "boolean";
        break;
      case Type::kObject:
        p["type"] = "object";
        break;
      case Type::kEnum:
        p["enum"] = r.choices;
        break;
      case Type::kState:
        p["oneOf"] = json::array({{{"type", "number"}},
                                  {{"type", "array"}, {"items", {{"type", "number"}}},
                                   {"minItems", 2}, {"maxItems", 2}}});
        break;
      case Type::kNumberList:
        p["type"] = "array";
        p["items"] = {{"type", "number"}};
        break;
      case Type::kStateList:
        p["type"] = "array";
        break;
    }
    if (std::isfinite(r.lo)) p[r.lo_open ? "exclusiveMinimum" : "minimum"] = r.lo;
    if (std::isfinite(r.hi)) p[r.hi_open ? "exclusiveMaximum" : "maximum"] = r.hi;
    if (*r.doc) p["description"] = r.doc;
    props[r.key] = p;
  }
  return {{"type", "object"}, {"additionalProperties", false}, {"properties", props}};
}

}  // namespace

nlohmann::json scenario_schema() {
  json s = rules_schema(top_rules());
  s["$schema"] = "https://json-schema.org/draft/2020-12/schema";
  s["title"] = "linstab scenario";
  s["required"] = {"schema_version", "name", "kind", "initial"};
  s["properties"]["flux"] = rules_schema(flux_rules());
  s["properties"]["flux"]["required"] = {"type"};
  s["properties"]["initial"] = rules_schema(initial_rules());
  s["properties"]["initial"]["required"] = {"type"};
  s["properties"]["params"] = rules_schema(param_rules());
  return s;
}

double Scenario::param(const std::string& key, double fallback) const {
  return params.contains(key) ? params.at(key).get<double>() : fallback;
}

std::vector<double> Scenario::param_list(const std::string& key,
                                         std::vector<double> fallback) const {
  if (!params.contains(key)) return fallback;
  return params.at(key).get<std::vector<double>>();
}

Scenario parse_scenario(const std::string& text, const std::string& source) {
  Scenario s;
  s.source = source;
  s.text = text;
  try {
    s.raw = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("JSON parse error: ") + e.what(), source,
                      line_of_byte(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  const Validator v{text, source};
  if (!s.raw.is_object()) throw ConfigError("scenario must be a JSON object", source, 1);
  v.check(s.raw, top_rules(), "scenario");
  for (const char* key : {"schema_version", "name", "kind", "initial"}) {
    if (!s.raw.contains(key)) throw ConfigError(std::string("missing key \"") + key + "\"", source, 1);
  }
  s.name = s.raw.at("name").get<std::string>();
  if (s.name.empty() || s.name.find_first_not_of("abcdefghijklmnopqrstuvwxyz0123456789-") !=
                            std::string::npos) {
    v.fail("name", "scenario.name must match [a-z0-9-]+");
  }
  s.kind = s.raw.at("kind").get<std::string>();
  if (s.raw.contains("flux")) {
    s.flux = s.raw.at("flux");
    v.check(s.flux, flux_rules(), "flux");
    if (!s.flux.contains("type")) v.fail("flux", "flux.type is required");
  }
  s.initial = s.raw.at("initial");
  v.check(s.initial, initial_rules(), "initial");
  if (!s.initial.contains("type")) v.fail("initial", "initial.type is required");
  s.params = s.raw.value("params", json::object());
  v.check(s.params, param_rules(), "params");
  if (s.params.contains("w_min") && s.params.contains("w_max") &&
      s.params["w_min"].get<double>() > s.params["w_max"].get<double>()) {
    v.fail("w_min", "params.w_min exceeds params.w_max");
  }
  s.seed = s.raw.value("seed", std::uint64_t{0});
  s.output = s.raw.value("output", std::string("out/") + s.name);
  try {
    detail::validate_kind(s);
  } catch (const detail::KindError& e) {
    v.fail(e.key, e.what());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read scenario file", path.string(), 0);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

// --- reports ------------------------------------------------------------------

bool RunReport::passed() const {
  if (partial || !error.empty()) return false;
  return std::all_of(assertions.begin(), assertions.end(),
                     [](const Assertion& a) { return a.passed; });
}

nlohmann::json RunReport::to_json() const {
  json j;
  j["name"] = name;
  j["kind"] = kind;
  j["seed"] = seed;
  j["scenario"] = scenario;
  j["passed"] = passed();
  j["partial"] = partial;
  if (!error.empty()) j["error"] = error;
  auto& as = j["assertions"] = json::array();
  for (const auto& a : assertions) {
    json e{{"name", a.name}, {"passed", a.passed}, {"value", a.value}, {"bound", a.bound}};
    if (!a.detail.empty()) e["detail"] = a.detail;
    as.push_back(e);
  }
  j["measured"] = measured;
  j["artifacts"] = artifacts;
  j["wall_time"] = wall_time;
  return j;
}

RunReport run_scenario(const Scenario& s, const std::filesystem::path& out_dir) {
  RunReport rep;
  rep.name = s.name;
  rep.kind = s.kind;
  rep.seed = s.seed;
  rep.scenario = s.raw;
  rep.scenario["seed"] = s.seed;
  const auto start = std::chrono::steady_clock::now();
  std::filesystem::create_directories(out_dir);
  detail::Context ctx{s, out_dir, rep, SeedTree(s.seed)};
  try {
    detail::run_kind(ctx);
  } catch (const std::exception& e) {
    rep.partial = true;
    rep.error = e.what();
  }
  rep.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_json(out_dir / "report.json", rep.to_json());
  return rep;
}

// --- suite --------------------------------------------------------------------

SuiteResult run_suite(const std::filesystem::path& manifest, unsigned jobs,
                      const std::filesystem::path& out_root) {
  std::ifstream in(manifest, std::ios::binary);
  if (!in) throw ConfigError("cannot read manifest", manifest.string(), 0);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json m;
  try {
    m = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("JSON parse error: ") + e.what(), manifest.string(),
                      line_of_byte(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!m.is_object()) throw ConfigError("manifest must be a JSON object", manifest.string(), 1);
  for (auto it = m.begin(); it != m.end(); ++it) {
    if (it.key() != "schema_version" && it.key() != "scenarios" && it.key() != "description") {
      throw ConfigError("unknown key \"" + it.key() + "\" in manifest", manifest.string(),
                        line_of(text, it.key()));
    }
  }
  if (m.value("schema_version", 0) != kSchemaVersion) {
    throw ConfigError("manifest schema_version must be 1", manifest.string(),
                      line_of(text, "schema_version"));
  }
  if (!m.contains("scenarios") || !m["scenarios"].is_array()) {
    throw ConfigError("manifest needs a \"scenarios\" array", manifest.string(),
                      line_of(text, "scenarios"));
  }
  std::vector<std::string> paths;
  for (const auto& p : m["scenarios"]) {
    if (!p.is_string()) {
      throw ConfigError("manifest scenarios must be paths", manifest.string(),
                        line_of(text, "scenarios"));
    }
    paths.push_back(p.get<std::string>());
  }

  SuiteResult result;
  result.entries.resize(paths.size());
  std::atomic<std::size_t> next{0};
  const auto base = manifest.parent_path();
  const auto worker = [&] {
    for (std::size_t k = next++; k < paths.size(); k = next++) {
      auto& e = result.entries[k];
      e.path = paths[k];
      e.name = std::filesystem::path(paths[k]).stem().string();
      try {
        const auto s = load_scenario(base / paths[k]);
        e.name = s.name;
        e.report = run_scenario(s, out_root / s.name);
        e.exit_code = e.report.passed() ? 0 : 1;
        if (!e.report.error.empty()) e.message = e.report.error;
      } catch (const std::exception& ex) {
        e.exit_code = 1;
        e.message = ex.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(paths.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  std::stable_sort(result.entries.begin(), result.entries.end(),
                   [](const SuiteEntry& a, const SuiteEntry& b) {
                     return a.name != b.name ? a.name < b.name : a.path < b.path;
                   });
  for (const auto& e : result.entries) {
    if (e.exit_code != 0) result.exit_code = 1;
  }
  return result;
}

}  // namespace linstab
