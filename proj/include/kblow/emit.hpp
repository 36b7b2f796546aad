#pragma once

#include <json.hpp>
#include <sstream>

#include "kblow/suites.hpp"

namespace kblow {

inline constexpr const char* kReportSchema = "kblow-report/1";

// Human-readable report. Deterministic for a fixed (scenario, seed) unless
// timings are requested.
inline std::string emit_text(const RunReport& run, bool timings = false) {
  std::ostringstream os;
  os << "kblow verification report\n";
  os << "scenario: " << run.scenario_name << "\n";
  os << "seed: " << run.seed << "  truncation: " << run.truncation << "\n";
  for (const auto& sr : run.suites) {
    os << "\n== suite " << sr.suite << " ==\n";
    for (const auto& row : sr.report.rows()) {
      os << "[" << (row.status == Status::pass ? "PASS" : row.status == Status::fail ? "FAIL" : "skip")
         << "] " << row.name;
      if (!row.anchor.empty()) os << "  {" << row.anchor << "}";
      if (timings) {
        std::ostringstream ms;
        ms.setf(std::ios::fixed);
        ms.precision(3);
        ms << row.wall_ms;
        os << "  (" << ms.str() << " ms)";
      }
      os << "\n";
      if (row.status == Status::fail) {
        if (!row.lhs.empty()) os << "    lhs: " << row.lhs << "\n";
        if (!row.rhs.empty()) os << "    rhs: " << row.rhs << "\n";
      }
    }
    os << "suite " << sr.suite << ": " << sr.report.count(Status::pass) << " pass, "
       << sr.report.count(Status::fail) << " fail, " << sr.report.count(Status::skip)
       << " recorded\n";
  }
  os << "\ntotal: " << run.count(Status::pass) << " pass, " << run.count(Status::fail)
     << " fail, " << run.count(Status::skip) << " recorded\n";
  os << (run.all_pass() ? "RESULT: PASS\n" : "RESULT: FAIL\n");
  return os.str();
}

// Machine-readable report, schema kblow-report/1. Classes appear both
// pretty-printed and as structured term records.
inline std::string emit_json(const RunReport& run, bool timings = false) {
  nlohmann::ordered_json doc;
  doc["schema"] = kReportSchema;
  doc["scenario"] = run.scenario_name;
  doc["seed"] = run.seed;
  doc["truncation"] = run.truncation;
  doc["suites"] = nlohmann::ordered_json::array();
  for (const auto& sr : run.suites) {
    nlohmann::ordered_json suite;
    suite["suite"] = sr.suite;
    suite["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : sr.report.rows()) {
      nlohmann::ordered_json r;
      r["name"] = row.name;
      r["status"] = to_string(row.status);
      r["anchor"] = row.anchor;
      r["lhs"] = row.lhs;
      r["rhs"] = row.rhs;
      if (!row.lhs_json.empty()) r["lhs_class"] = nlohmann::ordered_json::parse(row.lhs_json);
      if (!row.rhs_json.empty()) r["rhs_class"] = nlohmann::ordered_json::parse(row.rhs_json);
      if (timings) r["wall_ms"] = row.wall_ms;
      suite["rows"].push_back(std::move(r));
    }
    suite["pass"] = sr.report.count(Status::pass);
    suite["fail"] = sr.report.count(Status::fail);
    suite["recorded"] = sr.report.count(Status::skip);
    doc["suites"].push_back(std::move(suite));
  }
  doc["summary"] = {{"pass", run.count(Status::pass)},
                    {"fail", run.count(Status::fail)},
                    {"recorded", run.count(Status::skip)},
                    {"result", run.all_pass() ? "pass" : "fail"}};
  return doc.dump(2) + "\n";
}

}  // namespace kblow
