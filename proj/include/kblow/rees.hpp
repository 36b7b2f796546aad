#pragma once

#include <algorithm>
#include <functional>
#include <string>

#include "kblow/oracle.hpp"
#include "kblow/report.hpp"
#include "kblow/serre.hpp"

namespace kblow {

// Local model of a closed embedding Z -> X from which the graded invariants
// of the blow-up are computed.
//
// zero_section: Z is the base point and X the total space of the conormal
// complex F = {V -> W}, so the extended Rees algebra is the bigraded ring of
// functions on X x A^1 and everything has a closed form. Every weight of F
// must be a nontrivial character so the localized structure class
// [O_X] = prod(1-v)/prod(1-w) exists.
//
// chart: the embedding is presented by bundle data V1 -g1-> V0 -w0-> O over
// an ambient point, with sections generic; only Koszul alternating sums of
// the data enter, so the actual sections never appear. v0 weights must be
// pairwise distinct so the projectivization has isolated fixed points.
class BlowupModel {
 public:
  enum class Kind { zero_section, chart };

  static BlowupModel zero_section(TwoTermComplex conormal) {
    if (!conormal.all_weights_nontrivial())
      throw kb_error("zero_section model: trivial weight in the conormal");
    BlowupModel m;
    m.kind_ = Kind::zero_section;
    m.conormal_ = std::move(conormal);
    return m;
  }

  static BlowupModel chart(Bundle v1, Bundle v0) {
    if (!(v1.shape() == v0.shape())) throw kb_error("chart model: shape mismatch");
    if (v0.rank() < 1) throw kb_error("chart model: v0 must be nonempty");
    if (!v0.weights_pairwise_distinct())
      throw kb_error("chart model: repeated v0 weights");
    BlowupModel m;
    m.kind_ = Kind::chart;
    m.conormal_ = TwoTermComplex(std::move(v1), std::move(v0));
    return m;
  }

  Kind kind() const noexcept { return kind_; }
  bool is_zero_section() const noexcept { return kind_ == Kind::zero_section; }
  const VarShape& shape() const noexcept { return conormal_.shape(); }

  const TwoTermComplex& conormal() const {
    require_zero_section();
    return conormal_;
  }

  const Bundle& v1() const { return conormal_.v; }
  const Bundle& v0() const { return conormal_.w; }

  // Virtual codimension of the center.
  int rank() const noexcept { return conormal_.rank(); }

  void require_zero_section() const {
    if (kind_ != Kind::zero_section) throw kb_error("operation requires a zero_section model");
  }

  void require_chart() const {
    if (kind_ != Kind::chart) throw kb_error("operation requires a chart model");
  }

  std::string str() const {
    return std::string(kind_ == Kind::zero_section ? "zs" : "chart") + conormal_.str();
  }

 private:
  Kind kind_ = Kind::zero_section;
  TwoTermComplex conormal_;
};

// [O_X] for the zero_section model: the full symmetric algebra character
// prod(1-v_i)/prod(1-w_j).
inline RationalClass structure_class(const BlowupModel& m) {
  m.require_zero_section();
  const TwoTermComplex& f = m.conormal();
  LaurentPoly num = LaurentPoly::one(f.shape());
  for (const auto& vw : f.v.weights()) num *= LaurentPoly::one_minus(vw);
  return RationalClass(std::move(num), f.w.weights());
}

// Degree-d piece of the extended Rees algebra. For d <= 0 the negative tower
// is all of O_X; for d > 0 the symmetric powers below degree d are removed.
inline RationalClass rees_piece(const BlowupModel& m, int d) {
  RationalClass r = structure_class(m);
  for (int n = 0; n < d; ++n) r -= RationalClass(sym_virtual(m.conormal(), n));
  return r;
}

// f_* S^b(C) and its dual-regime partner
// (-1)^{1-r} f_*(S^{-r-b}(C)^dual det(C)^{-1}).
inline LaurentPoly h_plus(const BlowupModel& m, int b) {
  m.require_zero_section();
  return sym_virtual(m.conormal(), b);
}

inline LaurentPoly h_minus(const BlowupModel& m, int b) {
  m.require_zero_section();
  const TwoTermComplex& f = m.conormal();
  const int r = f.rank();
  LaurentPoly t = sym_virtual(f.dual(), -r - b);
  if (t.is_zero()) return t;
  t = t.shifted(det_class(f).inverse());
  if (sign_pow(1 - r) < 0) t = -t;
  return t;
}

// pr_* O_Bl(d) = sum_{n >= d} pr_{F*} O_{P(F)}(n): the Rees piece plus the
// finite dual-regime correction sum_{n=d}^{-r} h_minus(n).
inline RationalClass blowup_piece(const BlowupModel& m, int d) {
  RationalClass r = rees_piece(m, d);
  const int rk = m.rank();
  for (int n = d; n <= -rk; ++n) r += RationalClass(h_minus(m, n));
  return r;
}

// Class of the lattice object W_{a,b}, the cofiber of
// phi_{>=b} (+) t^{a-b} : R^b -> pr_*O_Bl(b) (+) R^a.
inline RationalClass w_class(const BlowupModel& m, int a, int b) {
  if (a > b) throw kb_error("w_class: requires a <= b");
  return blowup_piece(m, b) + rees_piece(m, a) - rees_piece(m, b);
}

// The fiber-sequence squares of the lattice, as exact identities:
//   (i)   W_{a+1,b} = W_{a+1,b+1} + H_b^-
//   (ii)  W_{a,b+1} = W_{a+1,b+1} + H_a^+
//   (iii) W_{a,a}   = W_{a+1,a+1} + H_a^+ + H_a^-
//   (iv)  H_a^+ + H_a^- = pr_{C*} O_{P(C)}(a)
inline VerificationReport verify_lattice(const BlowupModel& m, int lo, int hi) {
  if (lo >= hi) throw kb_error("verify_lattice: requires lo < hi");
  m.require_zero_section();
  VerificationReport rep;
  const std::string tag = " m=" + m.str();
  for (int a = lo; a <= hi; ++a) {
    for (int b = a + 1; b <= hi; ++b) {
      rep.add_eq("lattice/row a=" + std::to_string(a) + " b=" + std::to_string(b) + tag,
                 "thm:main(4)", w_class(m, a + 1, b),
                 w_class(m, a + 1, b + 1) + RationalClass(h_minus(m, b)));
      rep.add_eq("lattice/column a=" + std::to_string(a) + " b=" + std::to_string(b) + tag,
                 "thm:main(4)", w_class(m, a, b + 1),
                 w_class(m, a + 1, b + 1) + RationalClass(h_plus(m, a)));
    }
    rep.add_eq("lattice/diagonal a=" + std::to_string(a) + tag, "thm:main(5)", w_class(m, a, a),
               w_class(m, a + 1, a + 1) + RationalClass(h_plus(m, a) + h_minus(m, a)));
    rep.add_eq("lattice/serre-fiber a=" + std::to_string(a) + tag, "thm:main(5)",
               h_plus(m, a) + h_minus(m, a), push_O(m.conormal(), a));
  }
  return rep;
}

// The K-theoretic comparison formula
//   pr_*[O_Bl] = [O_X] + (-1)^{1-r} sum_{l=0}^{-r} det(C)^{-1} [S^l(C^dual)],
// together with the fiber-sequence chain D_l = W_{0,l} for r <= 0.
inline VerificationReport comparison_formula(const BlowupModel& m) {
  m.require_zero_section();
  VerificationReport rep;
  const TwoTermComplex& f = m.conormal();
  const int r = f.rank();
  const std::string tag = " m=" + m.str();

  LaurentPoly correction(f.shape());
  for (int l = 0; l <= -r; ++l)
    correction += sym_virtual(f.dual(), l).shifted(det_class(f).inverse());
  if (sign_pow(1 - r) < 0) correction = -correction;
  rep.add_eq("comparison/pushforward" + tag, "eq:noref", blowup_piece(m, 0),
             structure_class(m) + RationalClass(correction));

  if (r <= 0) {
    // D_0 = pr_*[O_Bl], D_{-r+1} = [O_X], steps drop one dual regime piece.
    rep.add_eq("comparison/D-first" + tag, "conj:1.4(1)", w_class(m, 0, 0), blowup_piece(m, 0));
    rep.add_eq("comparison/D-last" + tag, "conj:1.4(1)", w_class(m, 0, -r + 1),
               structure_class(m));
    for (int l = 0; l <= -r; ++l)
      rep.add_eq("comparison/D-step l=" + std::to_string(l) + tag, "conj:1.4(2)",
                 w_class(m, 0, l), w_class(m, 0, l + 1) + RationalClass(h_minus(m, l)));
  }
  return rep;
}

// A Z-graded family of classes: closed form per degree plus its truncated
// grading-variable expansion. The stored series is the partial sum of the
// symmetric-power tower, which the closed form reproduces telescopically.
struct GradedClassFamily {
  std::function<RationalClass(int)> closed_form;
  std::function<LaurentPoly(int, int)> series;  // (degree, order) -> truncation

  // The degree-shift consistency R^d - R^{d+1} = S^d that ties the two
  // representations together.
  bool telescope_consistent(const LaurentPoly& sym_d, int d) const {
    return equivalent(closed_form(d) - closed_form(d + 1), RationalClass(sym_d));
  }
};

inline GradedClassFamily rees_family(const BlowupModel& m) {
  m.require_zero_section();
  GradedClassFamily fam;
  fam.closed_form = [m](int d) { return rees_piece(m, d); };
  fam.series = [m](int d, int order) {
    LaurentPoly acc(m.shape());
    for (int k = std::max(d, 0); k <= order; ++k) acc += sym_virtual(m.conormal(), k);
    return acc;
  };
  return fam;
}

// Bigraded character of the Rees presentation
//   A[t^-1, u_1..u_n] / (u_i t^-1 - sigma_i, relations from V)
// with q marking the Rees degree and t^-1 the degree -1 shift. The ambient
// polynomial generators contribute geometric factors, every Koszul relation
// contributes a binomial, and the t^-1 tower is summed degree by degree.
// Each degree-d slice must match the Rees-piece series.
inline VerificationReport rees_presentation_char(const BlowupModel& m, int order) {
  m.require_zero_section();
  if (order > 20) throw kb_error("rees_presentation_char: truncation too large (order <= 20)");
  if (order < 0) throw kb_error("rees_presentation_char: negative order");
  VerificationReport rep;
  const TwoTermComplex& f = m.conormal();
  VarShape lifted{f.shape().torus, f.shape().aux + 1};
  const int slot = f.shape().aux;
  auto q = ExponentVector::aux_var(lifted, slot);

  // Presentation, assembled factor by factor:
  //   ambient A = Sym(W):            1/prod(1 - w_j)           (Rees degree 0)
  //   Rees generators u_j:           1/prod(1 - w_j q)
  //   Koszul u_j t^-1 - sigma_j:     prod(1 - w_j)             (Rees degree 0)
  //   Koszul relations from V:       prod(1 - v_i q)
  //   t^-1 tower:                    1/(1 - q^-1), summed degree by degree.
  // Identical binomials above and below the bar cancel exactly (the Laurent
  // ring is a domain), which removes the degree-0 pairs before expansion.
  std::vector<ExponentVector> num_binomials, den_binomials;
  for (const auto& w : f.w.weights()) {
    num_binomials.push_back(w.lift(lifted));
    den_binomials.push_back(w.lift(lifted) * q);
    den_binomials.push_back(w.lift(lifted));
  }
  for (const auto& v : f.v.weights()) num_binomials.push_back(v.lift(lifted) * q);
  LaurentPoly pres_num = LaurentPoly::one(lifted);
  for (const auto& nb : num_binomials) {
    auto it = std::find(den_binomials.begin(), den_binomials.end(), nb);
    if (it != den_binomials.end())
      den_binomials.erase(it);
    else
      pres_num *= LaurentPoly::one_minus(nb);
  }
  RationalClass presentation(pres_num, den_binomials);

  LaurentPoly expansion = rat_series(presentation, order);
  auto fam = rees_family(m);

  const int dspan = order / 2;
  for (int d = -dspan; d <= dspan; ++d) {
    // Degree-d slice of expansion * sum_{j>=0} q^{-j}.
    LaurentPoly slice(lifted);
    for (int k = std::max(d, 0); k <= order; ++k) slice += expansion.aux_coefficient(slot, k);
    LaurentPoly expected = fam.series(d, order).lift(lifted);
    rep.add_eq("rees-presentation/slice d=" + std::to_string(d) + " m=" + m.str(), "exm:Rees1",
               slice, expected);
  }

  // Closed-form telescope at a few degrees, tying series and closed form.
  for (int d = 0; d <= std::min(dspan, 3); ++d)
    rep.add_bool("rees-presentation/telescope d=" + std::to_string(d) + " m=" + m.str(),
                 "support1", fam.telescope_consistent(sym_virtual(f, d), d));
  return rep;
}

// Second, independent route to blow-up pushforwards: the chart model's
// blow-up is the zero locus over P(v0) of a cosection with source
// L_{P(v0)}(1) (+) v1(-1), so pr_*O(d) is the Koszul alternating sum pushed
// through chi_proj. The aux slot tracks powers of O(1).
inline LaurentPoly chart_blowup_piece(const BlowupModel& m, int d) {
  m.require_chart();
  const Bundle& v1 = m.v1();
  const Bundle& v0 = m.v0();
  VarShape lifted{v0.shape().torus, v0.shape().aux + 1};
  const int slot = v0.shape().aux;
  auto q = ExponentVector::aux_var(lifted, slot);
  Bundle v0l = v0.lift(lifted);
  Bundle v1l = v1.lift(lifted);

  // sum_a (-1)^a wedge^a(L_{P(v0)}(1)) with [L_{P(v0)}(1)] = [v0] - [O(1)]:
  // e_a of the difference expands as sum_j (-1)^j e_{a-j}(v0) O(j), and the
  // honest bundle has rank v0 - 1 so a stops there.
  LaurentPoly koszul_a(lifted);
  for (int a = 0; a <= v0.rank() - 1; ++a) {
    LaurentPoly ea(lifted);
    for (int j = std::max(0, a - v0.rank()); j <= a; ++j) {
      LaurentPoly t = e_char(v0l, a - j).shifted(q.pow(j));
      if (j % 2) t = -t;
      ea += t;
    }
    if (a % 2) ea = -ea;
    koszul_a += ea;
  }

  LaurentPoly koszul_b(lifted);
  for (int b = 0; b <= v1.rank(); ++b) {
    LaurentPoly t = e_char(v1l, b).shifted(q.pow(-b));
    if (b % 2) t = -t;
    koszul_b += t;
  }

  LaurentPoly total = koszul_a * koszul_b;
  LaurentPoly result(v0.shape());
  for (int p = total.min_aux_degree(slot); p <= total.max_aux_degree(slot); ++p) {
    LaurentPoly coeff = total.aux_coefficient(slot, p);
    if (coeff.is_zero()) continue;
    // Drop the exhausted aux slot and push through the fixed points.
    LaurentPoly c0(v0.shape());
    for (const auto& [mono, c] : coeff.terms()) {
      std::vector<int> e(mono.exponents().begin(), mono.exponents().begin() + v0.shape().total());
      c0.add_term(ExponentVector(v0.shape(), std::move(e)), c);
    }
    result += c0 * oracle::chi_proj(v0, d + p);
  }
  return result;
}

}  // namespace kblow
