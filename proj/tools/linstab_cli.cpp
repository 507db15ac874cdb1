#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "linstab/harness.hpp"

namespace {

void print_report(const linstab::RunReport& r) {
  for (const auto& a : r.assertions) {
    std::cout << (a.passed ? "PASS " : "FAIL ") << a.name << " (value " << a.value << ", bound "
              << a.bound << ")\n";
  }
  if (!r.error.empty()) std::cout << "ERROR " << r.error << "\n";
  std::cout << (r.passed() ? "PASSED " : "FAILED ") << r.name << " in " << r.wall_time << " s\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linstab verification workbench"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir;
  std::uint64_t seed = 0;
  auto* run = app.add_subcommand("run", "run one scenario");
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--out", out_dir, "output directory");
  auto* seed_opt = run->add_option("--seed", seed, "override the scenario seed");

  std::string manifest_path, suite_out = "out";
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* suite = app.add_subcommand("suite", "run every scenario of a manifest");
  suite->add_option("manifest", manifest_path, "manifest JSON file")->required();
  suite->add_option("--jobs", jobs, "concurrent scenarios")->check(CLI::Range(1u, 1024u));
  suite->add_option("--out", suite_out, "output root");

  app.add_subcommand("schema", "print the scenario schema");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      auto s = linstab::load_scenario(scenario_path);
      if (*seed_opt) s.seed = seed;
      const auto report = linstab::run_scenario(s, out_dir.empty() ? s.output : out_dir);
      print_report(report);
      return report.passed() ? 0 : 1;
    }
    if (*suite) {
      const auto result = linstab::run_suite(manifest_path, jobs, suite_out);
      for (const auto& e : result.entries) {
        std::cout << (e.exit_code == 0 ? "PASS " : "FAIL ") << e.name;
        if (!e.message.empty()) std::cout << ": " << e.message;
        std::cout << "\n";
      }
      std::cout << result.entries.size() << " scenarios, exit " << result.exit_code << "\n";
      return result.exit_code;
    }
    std::cout << linstab::scenario_schema().dump(2) << "\n";
    return 0;
  } catch (const linstab::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
