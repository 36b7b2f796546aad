#pragma once

#include <string>
#include <vector>

#include "kblow/rng.hpp"
#include "kblow/scenario.hpp"

namespace kblow {

struct SuiteRun {
  std::string suite;
  VerificationReport report;
};

struct RunReport {
  std::string scenario_name;
  uint64_t seed = 0;
  int truncation = 12;
  std::vector<SuiteRun> suites;

  bool all_pass() const {
    for (const auto& s : suites)
      if (!s.report.all_pass()) return false;
    return true;
  }

  size_t count(Status st) const {
    size_t n = 0;
    for (const auto& s : suites) n += s.report.count(st);
    return n;
  }
};

namespace suites {

inline int param_int(const CheckSpec& spec, const std::string& key, int fallback) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) return fallback;
  return std::stoi(it->second);
}

inline std::vector<std::string> param_names(const CheckSpec& spec, const std::string& key) {
  std::vector<std::string> names;
  auto it = spec.params.find(key);
  if (it == spec.params.end()) return names;
  std::istringstream in(it->second);
  std::string t;
  while (in >> t) names.push_back(t);
  return names;
}

// Seeded grid of two-term complexes with pairwise distinct nontrivial
// weights drawn from a three-variable torus.
inline std::vector<TwoTermComplex> complex_grid(uint64_t seed, int assignments, int vmax,
                                                int wmax) {
  const VarShape shape{3, 0};
  auto pool = monomial_pool(shape, 1);
  Rng rng(seed);
  std::vector<TwoTermComplex> grid;
  for (int rv = 0; rv <= vmax; ++rv) {
    for (int rw = 1; rw <= wmax; ++rw) {
      for (int rep = 0; rep < assignments; ++rep) {
        auto weights = draw_distinct(rng, pool, rv + rw);
        Bundle v(shape, {weights.begin(), weights.begin() + rv});
        Bundle w(shape, {weights.begin() + rv, weights.end()});
        grid.emplace_back(std::move(v), std::move(w));
      }
    }
  }
  return grid;
}

inline VerificationReport run_serre(const Scenario& sc, const CheckSpec& spec) {
  VerificationReport rep;
  const int dmin = param_int(spec, "dmin", -4);
  const int dmax = param_int(spec, "dmax", 4);
  const int assignments = param_int(spec, "assignments", 3);
  for (const auto& f : complex_grid(sc.seed * 1000003 + 17, assignments, 2, 3))
    rep.merge(serre_regime_check(f, dmin, dmax));
  for (const auto& name : param_names(spec, "models"))
    rep.merge(serre_regime_check(sc.model(name).conormal(), dmin, dmax));
  return rep;
}

inline VerificationReport run_vanishing(const Scenario& sc, const CheckSpec& spec) {
  VerificationReport rep;
  bool nonvacuous = false;
  for (const auto& name : param_names(spec, "models")) {
    const BlowupModel& m = sc.model(name);
    if (m.kind() == BlowupModel::Kind::chart) {
      // Cross-path rows: the chart Koszul route carries the ambient factor
      // prod(1 - w) relative to the zero-section route.
      auto zs = BlowupModel::zero_section(TwoTermComplex(m.v1(), m.v0()));
      LaurentPoly ambient = product_one_minus(m.shape(), m.v0().weights());
      for (int d = -3; d <= 3; ++d)
        rep.add_eq("vanishing/chart-path " + name + " d=" + std::to_string(d), "lemA421",
                   RationalClass(chart_blowup_piece(m, d)), blowup_piece(zs, d) * ambient);
      continue;
    }
    const int r = m.rank();
    const int span = std::abs(r) + 3;
    for (int d = -span; d <= span; ++d) {
      bool equal = equivalent(blowup_piece(m, d), rees_piece(m, d));
      bool expected = (d >= -r + 1);
      if (r <= 0 && d == -r && !equal) nonvacuous = true;
      rep.add_bool("vanishing/" + std::string(expected ? "match" : "strict") + " " + name +
                       " d=" + std::to_string(d),
                   "isomorphism2", equal == expected, blowup_piece(m, d).str(),
                   rees_piece(m, d).str());
    }
  }
  rep.add_bool("vanishing/non-vacuity at d=-r", "isomorphism2", nonvacuous);
  return rep;
}

inline VerificationReport run_lattice(const Scenario& sc, const CheckSpec& spec) {
  VerificationReport rep;
  const int lo = param_int(spec, "lo", -3);
  const int hi = param_int(spec, "hi", 3);
  for (const auto& name : param_names(spec, "models"))
    rep.merge(verify_lattice(sc.model(name), lo, hi));
  return rep;
}

inline VerificationReport run_comparison(const Scenario& sc, const CheckSpec& spec) {
  VerificationReport rep;
  for (const auto& name : param_names(spec, "models"))
    rep.merge(comparison_formula(sc.model(name)));
  return rep;
}

inline VerificationReport run_rees_presentation(const Scenario& sc, const CheckSpec& spec) {
  VerificationReport rep;
  const int order = param_int(spec, "order", sc.truncation);
  for (const auto& name : param_names(spec, "models"))
    rep.merge(rees_presentation_char(sc.model(name), order));
  return rep;
}

inline VerificationReport run_diagonal(const Scenario& sc, const CheckSpec& spec) {
  VerificationReport rep;
  for (const auto& name : param_names(spec, "diagonals")) {
    auto it = sc.diagonals.find(name);
    if (it == sc.diagonals.end()) throw kb_error("unresolved diagonal name '" + name + "'");
    rep.merge(telescope_check(it->second));
  }
  return rep;
}

inline VerificationReport run_localization(const Scenario& sc, const CheckSpec& spec) {
  VerificationReport rep;
  const int grid = param_int(spec, "grid", 20);

  Rng rng(sc.seed * 1000003 + 101);
  const VarShape shape{3, 0};
  auto pool = monomial_pool(shape, 1);
  bool grid_ok = true;
  std::string witness_lhs, witness_rhs;
  for (int i = 0; i < grid; ++i) {
    TwoTermComplex f(Bundle(shape, draw_distinct(rng, pool, rng.range(0, 2))),
                     Bundle(shape, draw_distinct(rng, pool, rng.range(0, 3))));
    RationalClass def = inv_wedge(f);
    RationalClass closed = inv_wedge_closed(f);
    if (!equivalent(def, closed)) {
      grid_ok = false;
      witness_lhs = def.str();
      witness_rhs = closed.str();
      break;
    }
  }
  rep.add_bool("localization/definition=closed grid=" + std::to_string(grid), "classicallocal",
               grid_ok, witness_lhs, witness_rhs);

  for (const auto& name : param_names(spec, "localizations")) {
    auto it = sc.localizations.find(name);
    if (it == sc.localizations.end())
      throw kb_error("unresolved localization name '" + name + "'");
    const LocalizationCase& lc = it->second;
    std::vector<FixedComponentDatum> comps;
    for (const auto& cn : lc.component_names) comps.push_back(sc.component(cn));
    RationalClass total = RationalClass::zero(sc.shape());
    if (lc.total.has_value()) {
      total = *lc.total;
    } else {
      LaurentPoly t = oracle::chi_proj(*lc.zl_w, 0) -
                      LaurentPoly::monomial(*lc.zl_s) * oracle::chi_proj(*lc.zl_w, lc.zl_m);
      total = RationalClass(std::move(t));
    }
    auto sub = vloc_check(comps, total);
    VerificationReport named;
    for (auto row : sub.rows()) {
      row.name = "localization/" + name + " " + row.name.substr(row.name.find('/') + 1);
      named.add(std::move(row));
    }
    rep.merge(named);
  }
  return rep;
}

inline VerificationReport run_approx(const Scenario& sc, const CheckSpec& spec) {
  VerificationReport rep;
  for (const auto& name : param_names(spec, "sequences")) {
    auto it = sc.sequences.find(name);
    if (it == sc.sequences.end()) throw kb_error("unresolved sequence name '" + name + "'");
    const SequenceCase& q = it->second;
    BlowupSequence seq;
    seq.terminal_empty = q.terminal_empty;
    for (const auto& [mn, adjust] : q.steps) {
      const BlowupModel& m = sc.model(mn);
      seq.steps.emplace_back(m, m.rank(), adjust);
    }
    auto sub = sequence_telescope_check(seq, q.initial);
    VerificationReport named;
    for (auto row : sub.rows()) {
      row.name = "approx/" + name + "/" + row.name.substr(row.name.find('/') + 1);
      named.add(std::move(row));
    }
    rep.merge(named);
  }
  return rep;
}

}  // namespace suites

inline VerificationReport run_suite(const Scenario& sc, const CheckSpec& spec) {
  using namespace suites;
  if (spec.suite == "serre") return run_serre(sc, spec);
  if (spec.suite == "vanishing") return run_vanishing(sc, spec);
  if (spec.suite == "lattice") return run_lattice(sc, spec);
  if (spec.suite == "comparison") return run_comparison(sc, spec);
  if (spec.suite == "rees-presentation") return run_rees_presentation(sc, spec);
  if (spec.suite == "diagonal") return run_diagonal(sc, spec);
  if (spec.suite == "localization") return run_localization(sc, spec);
  if (spec.suite == "approx") return run_approx(sc, spec);
  throw kb_error("unknown suite '" + spec.suite + "'");
}

// Runs the scenario's checks (optionally restricted to the named suites) and
// assembles a normalized report: rows sorted within each suite, suites in
// declaration order, so execution order can never change the output.
inline RunReport run_scenario(const Scenario& sc, const std::string& scenario_name,
                              const std::vector<std::string>& only_suites = {}) {
  RunReport run;
  run.scenario_name = scenario_name;
  run.seed = sc.seed;
  run.truncation = sc.truncation;
  for (const auto& spec : sc.checks) {
    if (!only_suites.empty()) {
      bool wanted = false;
      for (const auto& s : only_suites) wanted |= (s == spec.suite);
      if (!wanted) continue;
    }
    SuiteRun sr;
    sr.suite = spec.suite;
    sr.report = run_suite(sc, spec);
    sr.report.normalize();
    run.suites.push_back(std::move(sr));
  }
  return run;
}

}  // namespace kblow
