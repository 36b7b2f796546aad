// kblow: scenario runner for exact equivariant K-theory identity checks
// around derived blow-ups. Parses a declarative scenario, executes the
// selected verification suites, and writes deterministic reports.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "builtin_scenario.hpp"
#include "kblow/emit.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"exact verification of blow-up identities in equivariant K-theory"};
  app.require_subcommand(0, 1);

  bool list_suites = false;
  app.add_flag("--list-suites", list_suites, "print the available suite names and exit");

  auto* run = app.add_subcommand("run", "run a verification scenario");
  std::string scenario_path;
  bool builtin = false;
  std::vector<std::string> only_suites;
  int truncation = -1;
  long long seed = -1;
  std::string report_mode = "both";
  std::string out_dir = ".";
  bool timings = false;
  run->add_option("scenario", scenario_path, "scenario file to run");
  run->add_flag("--builtin", builtin, "run the built-in default scenario");
  run->add_option("--suite", only_suites, "restrict to the named suite (repeatable)");
  run->add_option("--truncation", truncation, "override the scenario's truncation order");
  run->add_option("--seed", seed, "override the scenario's seed");
  run->add_option("--report", report_mode, "report format: text, structured or both")
      ->check(CLI::IsMember({"text", "structured", "both"}));
  run->add_option("--out", out_dir, "directory for report files");
  run->add_flag("--timings", timings, "include wall-clock timings in the reports");

  CLI11_PARSE(app, argc, argv);

  if (list_suites) {
    for (const auto& name : kblow::suite_names()) std::cout << name << "\n";
    return 0;
  }
  if (!run->parsed()) {
    std::cout << app.help();
    return 0;
  }

  if (builtin == !scenario_path.empty()) {
    std::cerr << "error: pass a scenario file or --builtin (not both)\n";
    return 2;
  }

  for (const auto& s : only_suites) {
    bool known = false;
    for (const auto& n : kblow::suite_names()) known |= (n == s);
    if (!known) {
      std::cerr << "error: unknown suite '" << s << "'\n";
      return 2;
    }
  }

  kblow::Scenario sc;
  std::string name;
  try {
    if (builtin) {
      name = "builtin";
      sc = kblow::parse_scenario_text(kblow::builtin_scenario_text(), name);
    } else {
      name = scenario_path;
      std::ifstream in(scenario_path);
      if (!in) {
        std::cerr << "error: cannot open '" << scenario_path << "'\n";
        return 2;
      }
      sc = kblow::parse_scenario(in, scenario_path);
    }
  } catch (const kblow::kb_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (truncation >= 0) sc.truncation = truncation;
  if (seed >= 0) sc.seed = static_cast<uint64_t>(seed);

  int exit_code = 0;
  try {
    kblow::RunReport report = kblow::run_scenario(sc, name, only_suites);
    exit_code = report.all_pass() ? 0 : 1;

    std::string text = kblow::emit_text(report, timings);
    std::cout << text;
    fs::create_directories(out_dir);
    if (report_mode == "text" || report_mode == "both") {
      std::ofstream f(fs::path(out_dir) / "report.txt", std::ios::binary);
      f << text;
    }
    if (report_mode == "structured" || report_mode == "both") {
      std::ofstream f(fs::path(out_dir) / "report.json", std::ios::binary);
      f << kblow::emit_json(report, timings);
    }
  } catch (const kblow::kb_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
