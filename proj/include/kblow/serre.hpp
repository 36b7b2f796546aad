#pragma once

#include "kblow/lambda.hpp"
#include "kblow/oracle.hpp"
#include "kblow/report.hpp"

namespace kblow {

// Pushforward of O(d) along the derived projectivization of an amplitude
// [0,1] complex of rank r, as a closed form valid for every d:
//
//   [pr_* O(d)] = [S^d F] + (-1)^{1-r} [S^{-r-d}(F^dual)] det(F)^{-1}.
//
// The first summand vanishes for d < 0 and the second for d > -r, so the
// symmetric-power regime (d >= -r+1) and the dual regime (d < 0) fall out of
// the same expression with no case split.
inline LaurentPoly push_O(const TwoTermComplex& f, int d) {
  const int r = f.rank();
  LaurentPoly result = sym_virtual(f, d);
  LaurentPoly tail = sym_virtual(f.dual(), -r - d);
  if (!tail.is_zero()) {
    tail = tail.shifted(det_class(f).inverse());
    if (sign_pow(1 - r) < 0) tail = -tail;
    result += tail;
  }
  return result;
}

// Checks push_O against the Koszul oracle over a degree range, and pins the
// d = -r boundary: the cofiber of the symmetric-power regime at d = -r is
// the line det(F)^{-1}, up to the parity of 1-r.
inline VerificationReport serre_regime_check(const TwoTermComplex& f, int dmin, int dmax) {
  if (dmin > dmax) throw kb_error("serre_regime_check: range empty");
  VerificationReport rep;
  const int r = f.rank();
  for (int d = dmin; d <= dmax; ++d) {
    rep.add_eq("serre/push=koszul f=" + f.str() + " d=" + std::to_string(d), "thm:serre2",
               push_O(f, d), oracle::chi_proj_koszul(f, d));
  }
  if (dmin <= -r && -r <= dmax) {
    LaurentPoly cofiber = push_O(f, -r) - sym_virtual(f, -r);
    LaurentPoly det_line = LaurentPoly::monomial(det_class(f).inverse(), sign_pow(1 - r));
    rep.add_eq("serre/cofiber-at--r f=" + f.str(), "thm:serre2(2)", cofiber, det_line);
  }
  return rep;
}

}  // namespace kblow
