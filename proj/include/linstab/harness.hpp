#ifndef LINSTAB_HARNESS_HPP_
#define LINSTAB_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "linstab/errors.hpp"
#include "linstab/field.hpp"

namespace linstab {

// Invalid scenario or manifest; line is 0 when unknown.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::string source, int line)
      : Error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t fnv1a64(std::string_view s);

// Root seed split into independent named streams.
class SeedTree {
 public:
  explicit SeedTree(std::uint64_t root) : root_(root) {}
  std::uint64_t root() const { return root_; }
  std::uint64_t seed(std::string_view name) const;
  std::mt19937_64 stream(std::string_view name) const { return std::mt19937_64(seed(name)); }

 private:
  std::uint64_t root_;
};

// Zero far field, `jumps` breakpoints uniform in [x0, x1], interior
// values uniform in [-amplitude, amplitude].
ScalarField random_bv_field(std::mt19937_64& rng, int jumps, double amplitude, double x0 = -2.0,
                            double x1 = 2.0);

struct Scenario {
  std::string source;  // file name used in messages
  std::string text;    // raw file
  nlohmann::json raw;
  std::string name;
  std::string kind;
  nlohmann::json flux;
  nlohmann::json initial;
  nlohmann::json params;
  std::uint64_t seed = 0;
  std::string output;

  // Parameter with its default; the range was checked at parse time.
  double param(const std::string& key, double fallback) const;
  std::vector<double> param_list(const std::string& key, std::vector<double> fallback) const;
};

inline constexpr int kSchemaVersion = 1;

Scenario parse_scenario(const std::string& text, const std::string& source);
Scenario load_scenario(const std::filesystem::path& path);
nlohmann::json scenario_schema();

struct Assertion {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct RunReport {
  std::string name;
  std::string kind;
  std::uint64_t seed = 0;
  nlohmann::json scenario;
  std::vector<Assertion> assertions;
  nlohmann::json measured = nlohmann::json::object();
  std::vector<std::string> artifacts;
  double wall_time = 0.0;
  bool partial = false;
  std::string error;

  bool passed() const;
  nlohmann::json to_json() const;
};

// Runs the experiment and writes artifacts plus report.json into out_dir.
// Library errors during the experiment are recorded as a failed, partial
// report.
RunReport run_scenario(const Scenario& s, const std::filesystem::path& out_dir);

struct SuiteEntry {
  std::string name;
  std::string path;
  int exit_code = 0;
  std::string message;
  RunReport report;
};

struct SuiteResult {
  std::vector<SuiteEntry> entries;  // sorted by name
  int exit_code = 0;
};

// Manifest: {"schema_version": 1, "scenarios": [paths relative to the
// manifest]}. Each scenario writes below out_root/<name>.
SuiteResult run_suite(const std::filesystem::path& manifest, unsigned jobs,
                      const std::filesystem::path& out_root);

}  // namespace linstab

#endif  // LINSTAB_HARNESS_HPP_
