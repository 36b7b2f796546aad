#pragma once

#include <vector>

#include "kblow/report.hpp"
#include "kblow/serre.hpp"

namespace kblow {

// A connected component of the fixed locus: its own class (pushed to the
// base, with residual weights; 1 for an isolated point) and the conormal
// complex of the component inside the ambient derived scheme. Every conormal
// weight must be a nontrivial character, which is what licenses the
// localized inverses below.
struct FixedComponentDatum {
  RationalClass intrinsic;
  TwoTermComplex conormal;

  FixedComponentDatum(RationalClass intrinsic_, TwoTermComplex conormal_)
      : intrinsic(std::move(intrinsic_)), conormal(std::move(conormal_)) {
    if (!conormal.all_weights_nontrivial())
      throw kb_error("FixedComponentDatum: trivial weight in the conormal");
  }
};

// pr_{F*}(1/(1 - [O(1)])), assembled from the twist pushforwards: the
// symmetric-algebra tower sum_{d>=0} S^d(F) in closed geometric form plus
// the finite dual-regime corrections of each push_O(f, d) with 0 <= d <= -r.
inline RationalClass pushforward_term(const TwoTermComplex& f) {
  if (!f.all_weights_nontrivial())
    throw kb_error("pushforward_term: trivial weight");
  const int r = f.rank();
  LaurentPoly enumer(f.shape());
  for (int i = 0; i <= f.v.rank(); ++i) {
    LaurentPoly t = e_char(f.v, i);
    if (i % 2) t = -t;
    enumer += t;
  }
  RationalClass tower(std::move(enumer));
  for (const auto& wj : f.w.weights()) tower *= geom_inv(wj);
  for (int d = 0; d <= -r; ++d) {
    LaurentPoly tail = sym_virtual(f.dual(), -r - d).shifted(det_class(f).inverse());
    if (sign_pow(1 - r) < 0) tail = -tail;
    tower += RationalClass(std::move(tail));
  }
  return tower;
}

// [1 / wedge^bullet F] by its definition: the projectivization pushforward
// of the geometric series in O(1), plus the determinant-twisted finite
// correction (-1)^r det(F)^{-1} sum_{l=0}^{-r} S^l(F^dual).
inline RationalClass inv_wedge(const TwoTermComplex& f) {
  if (!f.all_weights_nontrivial()) throw kb_error("inv_wedge: trivial weight");
  const int r = f.rank();
  RationalClass result = pushforward_term(f);
  LaurentPoly corr(f.shape());
  for (int l = 0; l <= -r; ++l)
    corr += sym_virtual(f.dual(), l).shifted(det_class(f).inverse());
  if (sign_pow(r) < 0) corr = -corr;
  result += RationalClass(std::move(corr));
  return result;
}

// The classical-comparison form [wedge^bullet V][1/wedge^bullet W]:
// prod(1 - v_i) / prod(1 - w_j), assembled literally.
inline RationalClass inv_wedge_closed(const TwoTermComplex& f) {
  if (!f.all_weights_nontrivial()) throw kb_error("inv_wedge_closed: trivial weight");
  LaurentPoly num = LaurentPoly::one(f.shape());
  for (const auto& vi : f.v.weights()) num *= LaurentPoly::one_minus(vi);
  return RationalClass(std::move(num), f.w.weights());
}

// Virtual localization: [O_U] = sum_j i_{V_j *} [1/wedge^bullet C_{V_j/U}].
inline VerificationReport vloc_check(const std::vector<FixedComponentDatum>& components,
                                     const RationalClass& total) {
  if (components.empty()) throw kb_error("vloc_check: empty component list");
  VerificationReport rep;
  RationalClass sum = RationalClass::zero(total.shape());
  for (const auto& comp : components) sum += comp.intrinsic * inv_wedge(comp.conormal);
  rep.add_eq("localization/fixed-point-sum (" + std::to_string(components.size()) +
                 " components)",
             "virtual-localization", sum, total);
  return rep;
}

}  // namespace kblow
