// Acceptance suite: every criterion is an exact identity in integer or
// localized Laurent arithmetic (no tolerances). One pass/fail line per
// criterion; nonzero exit if any fails or overruns its time budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "kblow/approx.hpp"
#include "kblow/diagonal.hpp"
#include "kblow/localization.hpp"
#include "kblow/rees.hpp"
#include "kblow/rng.hpp"
#include "kblow/suites.hpp"

using namespace kblow;

namespace {

const VarShape kT3{3, 0};

Bundle bundle_of(std::initializer_list<std::vector<int>> exps) {
  std::vector<ExponentVector> w;
  for (const auto& e : exps) w.emplace_back(kT3, e);
  return Bundle(kT3, std::move(w));
}

std::vector<BlowupModel> six_models() {
  return {
      BlowupModel::zero_section(
          TwoTermComplex(Bundle::empty(kT3), bundle_of({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}))),
      BlowupModel::zero_section(
          TwoTermComplex(bundle_of({{1, 1, 0}}), bundle_of({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}))),
      BlowupModel::zero_section(
          TwoTermComplex(bundle_of({{0, 0, 1}, {1, 1, 0}}), bundle_of({{1, 0, 0}, {0, 1, 0}, {0, 2, 0}}))),
      BlowupModel::zero_section(
          TwoTermComplex(bundle_of({{1, 0, 0}}), bundle_of({{0, 1, 0}}))),
      BlowupModel::zero_section(
          TwoTermComplex(bundle_of({{1, 0, 0}, {0, 1, 0}}), bundle_of({{0, 0, 1}}))),
      BlowupModel::zero_section(
          TwoTermComplex(bundle_of({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}), bundle_of({{0, 0, 1}}))),
  };
}

std::vector<Bundle> diagonal_assignments(int r) {
  switch (r) {
    case 2: return {bundle_of({{1, 0, 0}, {0, 1, 0}})};
    case 3:
      return {bundle_of({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
              bundle_of({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}),
              bundle_of({{1, 0, 0}, {0, 0, 1}, {0, 1, 1}})};
    case 4:
      return {bundle_of({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}}),
              bundle_of({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 1}}),
              bundle_of({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}})};
    default:
      return {bundle_of({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}}),
              bundle_of({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {0, 1, 1}}),
              bundle_of({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {2, 0, 0}})};
  }
}

// --- criteria ---------------------------------------------------------------

// 1. push_O matches the Koszul oracle on the full grid; the d = -r cofiber
//    is the signed inverse determinant line.
bool criterion_serre() {
  for (const auto& f : suites::complex_grid(17, 3, 2, 3)) {
    const int r = f.rank();
    for (int d = -4; d <= 4; ++d)
      if (!(push_O(f, d) == oracle::chi_proj_koszul(f, d))) return false;
    LaurentPoly cofiber = push_O(f, -r) - sym_virtual(f, -r);
    LaurentPoly det_line = LaurentPoly::monomial(det_class(f).inverse(), sign_pow(1 - r));
    if (!(cofiber == det_line)) return false;
  }
  return true;
}

// 2. blowup_piece(d) = rees_piece(d) exactly when d >= -r+1, with strict
//    inequality exhibited at d = -r for an r <= 0 model.
bool criterion_vanishing() {
  bool strict_seen = false;
  for (const auto& m : six_models()) {
    const int r = m.rank();
    for (int d = -std::abs(r) - 3; d <= std::abs(r) + 3; ++d) {
      bool equal = equivalent(blowup_piece(m, d), rees_piece(m, d));
      if (equal != (d >= -r + 1)) return false;
      if (r <= 0 && d == -r && !equal) strict_seen = true;
    }
  }
  return strict_seen;
}

// 3. All four lattice fiber-sequence identities on a,b in [-3,3].
bool criterion_lattice() {
  for (const auto& m : six_models())
    if (!verify_lattice(m, -3, 3).all_pass()) return false;
  return true;
}

// 4. The comparison formula on all six models, including the trivial
//    pushforward for r > 0.
bool criterion_comparison() {
  for (const auto& m : six_models()) {
    if (!comparison_formula(m).all_pass()) return false;
    if (m.rank() > 0 && !equivalent(blowup_piece(m, 0), structure_class(m))) return false;
  }
  return true;
}

// 5. Bigraded presentation character slices match the Rees pieces for
//    |d| <= 6 at truncation order 12.
bool criterion_rees_presentation() {
  for (const auto& m : six_models())
    if (!rees_presentation_char(m, 12).all_pass()) return false;
  return true;
}

// 6. Exactly one twist convention closes the diagonal telescope for all of
//    r = 3,4,5 (three weight assignments each); r = 2 passes under both.
bool criterion_diagonal() {
  {
    DiagonalScenario s(2, diagonal_assignments(2)[0]);
    if (!telescope_holds(s, DiagonalScenario::Twist::plus_one)) return false;
    if (!telescope_holds(s, DiagonalScenario::Twist::minus_one)) return false;
  }
  bool plus_all = true, minus_all = true;
  for (int r : {3, 4, 5}) {
    for (const auto& weights : diagonal_assignments(r)) {
      DiagonalScenario s(r, weights);
      plus_all &= telescope_holds(s, DiagonalScenario::Twist::plus_one);
      minus_all &= telescope_holds(s, DiagonalScenario::Twist::minus_one);
    }
  }
  return plus_all && !minus_all;
}

// 7. inv_wedge agrees with the classical comparison form on a grid of >= 20
//    complexes; the three localization setups hold.
bool criterion_localization() {
  Rng rng(4047);
  auto pool = monomial_pool(kT3, 1);
  for (int i = 0; i < 20; ++i) {
    TwoTermComplex f(Bundle(kT3, draw_distinct(rng, pool, rng.range(0, 2))),
                     Bundle(kT3, draw_distinct(rng, pool, rng.range(0, 3))));
    if (!equivalent(inv_wedge(f), inv_wedge_closed(f))) return false;
  }

  RationalClass affine_total = RationalClass::one(kT3);
  for (int i = 0; i < 3; ++i) affine_total *= geom_inv(ExponentVector::var(kT3, i));
  std::vector<FixedComponentDatum> affine;
  affine.emplace_back(RationalClass::one(kT3),
                      TwoTermComplex(Bundle::empty(kT3),
                                     bundle_of({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})));
  if (!vloc_check(affine, affine_total).all_pass()) return false;

  std::vector<FixedComponentDatum> ab;
  ab.emplace_back(RationalClass::one(kT3),
                  TwoTermComplex(Bundle::empty(kT3), bundle_of({{1, 0, 0}})));
  ab.emplace_back(RationalClass::one(kT3),
                  TwoTermComplex(Bundle::empty(kT3), bundle_of({{-1, 0, 0}})));
  if (!vloc_check(ab, RationalClass::one(kT3)).all_pass()) return false;

  Bundle coords = bundle_of({{1, 0, 0}, {0, 1, 0}});
  auto s = ExponentVector::var(kT3, 2);
  auto t1 = ExponentVector::var(kT3, 0);
  auto t2 = ExponentVector::var(kT3, 1);
  RationalClass total(oracle::chi_proj(coords, 0) -
                      LaurentPoly::monomial(s) * oracle::chi_proj(coords, 1));
  std::vector<FixedComponentDatum> zl;
  zl.emplace_back(RationalClass::one(kT3),
                  TwoTermComplex(Bundle(kT3, {s * t1}), Bundle(kT3, {t2 * t1.inverse()})));
  zl.emplace_back(RationalClass::one(kT3),
                  TwoTermComplex(Bundle(kT3, {s * t2}), Bundle(kT3, {t1 * t2.inverse()})));
  return vloc_check(zl, total).all_pass();
}

// 8. Synthetic sequences satisfying the per-step comparison identity
//    telescope; a corrupted sequence fails at the corrupted step.
bool criterion_approx() {
  auto step_model = [&](std::initializer_list<std::vector<int>> v,
                        std::initializer_list<std::vector<int>> w) {
    return BlowupModel::zero_section(TwoTermComplex(bundle_of(v), bundle_of(w)));
  };
  auto m0 = step_model({}, {{1, 0, 0}});
  auto m1 = step_model({}, {{0, 1, 0}});
  auto mfin = step_model({{1, 0, 0}, {0, 1, 0}}, {});
  auto t1 = ExponentVector::var(kT3, 0);
  auto t2 = ExponentVector::var(kT3, 1);

  BlowupSequence seq;
  seq.steps.emplace_back(m0, 1, RationalClass::one(kT3));
  seq.steps.emplace_back(m1, 1, RationalClass(LaurentPoly::one_minus(t2), {t1}));
  seq.steps.emplace_back(mfin, -2, RationalClass(LaurentPoly::one(kT3), {t1, t1, t2}));
  RationalClass initial(LaurentPoly::one(kT3), {t1});
  if (!sequence_telescope_check(seq, initial).all_pass()) return false;
  if (!equivalent(approx_rhs(seq), initial)) return false;

  BlowupSequence corrupted = seq;
  corrupted.steps[1].adjust =
      corrupted.steps[1].adjust * LaurentPoly::monomial(ExponentVector::var(kT3, 2));
  auto rep = sequence_telescope_check(corrupted, initial);
  if (rep.all_pass()) return false;
  return rep.first_failure()->name.find("step-1") != std::string::npos;
}

// 9. Kernel: generating-function identity to order 12, recurrence vs
//    enumeration on the guarded grid, chi_proj double computation.
bool criterion_kernel() {
  Rng rng(99);
  auto pool = monomial_pool(kT3, 1);

  for (int rep = 0; rep < 5; ++rep) {
    TwoTermComplex f(Bundle(kT3, draw_distinct(rng, pool, rng.range(0, 2))),
                     Bundle(kT3, draw_distinct(rng, pool, rng.range(0, 3))));
    VarShape lifted{3, 1};
    auto q = ExponentVector::aux_var(lifted, 0);
    LaurentPoly sum(lifted);
    for (int n = 0; n <= 12; ++n)
      sum += sym_virtual(f, n).lift(lifted).shifted(q.pow(n));
    LaurentPoly num = LaurentPoly::one(lifted);
    for (const auto& vw : f.v.weights()) num *= LaurentPoly::one_minus(vw.lift(lifted) * q);
    std::vector<ExponentVector> den;
    for (const auto& ww : f.w.weights()) den.push_back(ww.lift(lifted) * q);
    if (!(sum == rat_series(RationalClass(num, den), 12))) return false;
  }

  for (int rank = 0; rank <= 5; ++rank) {
    Bundle b(kT3, draw_distinct(rng, pool, rank));
    for (int n = 0; n <= 10; ++n)
      if (!(h_char(b, n) == oracle::h_brute(b, n))) return false;
  }

  for (int rank = 1; rank <= 4; ++rank) {
    for (int rep = 0; rep < 2; ++rep) {
      Bundle w(kT3, draw_distinct(rng, pool, rank));
      for (int m = -6; m <= 6; ++m) oracle::chi_proj(w, m);  // throws on mismatch
    }
  }
  return true;
}

struct Criterion {
  std::string name;
  double budget_s;
  std::function<bool()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"serre: pushforward closed form = Koszul oracle, cofiber line", 10.0, criterion_serre},
      {"vanishing: blow-up vs Rees pieces, sharp at d = -r", 5.0, criterion_vanishing},
      {"lattice: all four fiber-sequence identities on [-3,3]", 10.0, criterion_lattice},
      {"comparison: pushforward formula on six models", 5.0, criterion_comparison},
      {"rees-presentation: bigraded slices |d| <= 6 at order 12", 10.0,
       criterion_rees_presentation},
      {"diagonal: unique twist convention across r = 3,4,5", 30.0, criterion_diagonal},
      {"localization: definition = closed form, three fixed-point checks", 10.0,
       criterion_localization},
      {"approx: telescoping sequences, corrupted-step attribution", 5.0, criterion_approx},
      {"kernel: generating function, enumeration, double computation", 10.0, criterion_kernel},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      ok = false;
      note = std::string("  [exception: ") + e.what() + "]";
    }
    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t1 - t0).count();
    if (secs > c.budget_s) {
      ok = false;
      note += "  [over budget]";
    }
    if (!ok) ++failures;
    std::printf("%s  %zu. %s (%.2fs, budget %.0fs)%s\n", ok ? "PASS" : "FAIL", i + 1,
                c.name.c_str(), secs, c.budget_s, note.c_str());
  }
  if (failures) std::printf("acceptance: %d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
