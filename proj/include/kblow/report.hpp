#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "kblow/rational.hpp"

namespace kblow {

enum class Status { pass, fail, skip };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
  }
  return "?";
}

// One verified identity. The two compared classes are always recorded, both
// pretty-printed and as structured term records, so a failing row is
// self-contained. `anchor` labels the identity being checked; `wall_ms` is
// only emitted when timing output is requested.
struct CheckRow {
  std::string name;
  Status status = Status::skip;
  std::string lhs;
  std::string rhs;
  std::string lhs_json;
  std::string rhs_json;
  std::string anchor;
  double wall_ms = 0.0;
};

class VerificationReport {
 public:
  void add(CheckRow row) { rows_.push_back(std::move(row)); }

  void add_eq(std::string name, std::string anchor, const RationalClass& lhs,
              const RationalClass& rhs) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = equivalent(lhs, rhs);
    auto t1 = std::chrono::steady_clock::now();
    CheckRow row;
    row.name = std::move(name);
    row.anchor = std::move(anchor);
    row.status = ok ? Status::pass : Status::fail;
    row.lhs = lhs.str();
    row.rhs = rhs.str();
    row.lhs_json = lhs.json_str();
    row.rhs_json = rhs.json_str();
    row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rows_.push_back(std::move(row));
  }

  void add_eq(std::string name, std::string anchor, const LaurentPoly& lhs,
              const LaurentPoly& rhs) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = (lhs == rhs);
    auto t1 = std::chrono::steady_clock::now();
    CheckRow row;
    row.name = std::move(name);
    row.anchor = std::move(anchor);
    row.status = ok ? Status::pass : Status::fail;
    row.lhs = lhs.str();
    row.rhs = rhs.str();
    row.lhs_json = lhs.json_str();
    row.rhs_json = rhs.json_str();
    row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rows_.push_back(std::move(row));
  }

  void add_bool(std::string name, std::string anchor, bool pass, std::string lhs = "",
                std::string rhs = "") {
    CheckRow row;
    row.name = std::move(name);
    row.anchor = std::move(anchor);
    row.status = pass ? Status::pass : Status::fail;
    row.lhs = std::move(lhs);
    row.rhs = std::move(rhs);
    rows_.push_back(std::move(row));
  }

  void merge(const VerificationReport& o) {
    rows_.insert(rows_.end(), o.rows_.begin(), o.rows_.end());
  }

  // Stable presentation order regardless of how rows were produced.
  void normalize() {
    std::stable_sort(rows_.begin(), rows_.end(),
                     [](const CheckRow& a, const CheckRow& b) { return a.name < b.name; });
  }

  const std::vector<CheckRow>& rows() const noexcept { return rows_; }

  bool all_pass() const {
    return std::none_of(rows_.begin(), rows_.end(),
                        [](const CheckRow& r) { return r.status == Status::fail; });
  }

  size_t count(Status s) const {
    return static_cast<size_t>(
        std::count_if(rows_.begin(), rows_.end(), [&](const CheckRow& r) { return r.status == s; }));
  }

  // First failing row, for compact diagnostics.
  const CheckRow* first_failure() const {
    for (const auto& r : rows_)
      if (r.status == Status::fail) return &r;
    return nullptr;
  }

 private:
  std::vector<CheckRow> rows_;
};

}  // namespace kblow
