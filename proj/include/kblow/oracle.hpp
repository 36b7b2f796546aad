#pragma once

#include <functional>
#include <vector>

#include "kblow/bundle.hpp"
#include "kblow/rational.hpp"

namespace kblow::oracle {

// Brute-force ground truth. Nothing here may route through the closed-form
// lambda/Serre modules: symmetric and exterior characters are enumerated
// monomial by monomial, and projective-space pushforwards are cross-checked
// against an independent fixed-point sum on every call.

inline constexpr int kMaxBruteDegree = 10;
inline constexpr int kMaxBruteRank = 5;

namespace detail {

inline void check_guard(const Bundle& b, int n) {
  if (n > kMaxBruteDegree || b.rank() > kMaxBruteRank)
    throw kb_error("oracle: cost guard exceeded (degree <= 10, rank <= 5)");
}

inline void enumerate_compositions(int slots, int total,
                                   std::vector<int>& current,
                                   const std::function<void(const std::vector<int>&)>& emit) {
  if (slots == 1) {
    current.push_back(total);
    emit(current);
    current.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    current.push_back(k);
    enumerate_compositions(slots - 1, total - k, current, emit);
    current.pop_back();
  }
}

}  // namespace detail

// Character of S^n by listing all degree-n monomials in the generators.
inline LaurentPoly h_brute(const Bundle& b, int n) {
  const VarShape shape = b.shape();
  if (n < 0) return LaurentPoly::zero(shape);
  if (n == 0) return LaurentPoly::one(shape);
  if (b.rank() == 0) return LaurentPoly::zero(shape);
  detail::check_guard(b, n);
  LaurentPoly acc(shape);
  std::vector<int> current;
  detail::enumerate_compositions(b.rank(), n, current, [&](const std::vector<int>& exps) {
    ExponentVector m = ExponentVector::unit(shape);
    for (size_t i = 0; i < exps.size(); ++i)
      if (exps[i]) m = m * b.weights()[i].pow(exps[i]);
    acc.add_term(m, 1);
  });
  return acc;
}

// Character of the n-th exterior power by subset enumeration.
inline LaurentPoly e_brute(const Bundle& b, int n) {
  const VarShape shape = b.shape();
  if (n < 0 || n > b.rank()) return LaurentPoly::zero(shape);
  detail::check_guard(b, n);
  LaurentPoly acc(shape);
  int r = b.rank();
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    if (__builtin_popcount(mask) != n) continue;
    ExponentVector m = ExponentVector::unit(shape);
    for (int i = 0; i < r; ++i)
      if (mask & (1u << i)) m = m * b.weights()[i];
    acc.add_term(m, 1);
  }
  return acc;
}

// Equivariant Euler characteristic of O(m) on the projectivization of the
// weight multiset w over a point. Computed two ways and cross-checked:
//  (a) section/Serre-duality count:  h_m(w)                  for m >= 0,
//      (-1)^{rank-1} dual(h_{-m-rank}(w)) * prod(w_i)^{-1}   for m <= -rank,
//      0 in the window -rank < m < 0;
//  (b) fixed-point sum  sum_i w_i^m / prod_{j!=i} (1 - w_j/w_i).
// Disagreement between the two is an internal failure.
inline LaurentPoly chi_proj(const Bundle& w, int m) {
  const VarShape shape = w.shape();
  const int rank = w.rank();
  if (rank < 1) throw kb_error("chi_proj: empty bundle has no projectivization");
  if (!w.weights_pairwise_distinct())
    throw kb_error("chi_proj: repeated weights, fixed points not isolated");

  LaurentPoly counted(shape);
  if (m >= 0) {
    counted = h_brute(w, m);
  } else if (m <= -rank) {
    counted = h_brute(w, -m - rank).dual().shifted(w.det().inverse());
    if (rank % 2 == 0) counted = -counted;
  }

  RationalClass bott = RationalClass::zero(shape);
  for (int i = 0; i < rank; ++i) {
    const ExponentVector& wi = w.weights()[static_cast<size_t>(i)];
    std::vector<ExponentVector> den;
    for (int j = 0; j < rank; ++j)
      if (j != i) den.push_back(w.weights()[static_cast<size_t>(j)] * wi.inverse());
    bott += RationalClass(LaurentPoly::monomial(wi.pow(m)), den);
  }
  if (!equivalent(bott, counted))
    throw kb_error("chi_proj: internal failure, fixed-point sum disagrees with monomial count");
  return counted;
}

// Euler characteristic of O(d) on the derived projectivization of {V -> W},
// realized as the zero locus of the tautological cosection V(-1) -> O inside
// the projectivization of W. Koszul alternating sum, exterior powers by
// subset enumeration.
inline LaurentPoly chi_proj_koszul(const TwoTermComplex& f, int d) {
  const VarShape shape = f.shape();
  LaurentPoly acc(shape);
  for (int i = 0; i <= f.v.rank(); ++i) {
    LaurentPoly t = e_brute(f.v, i) * chi_proj(f.w, d - i);
    if (i % 2) t = -t;
    acc += t;
  }
  return acc;
}

}  // namespace kblow::oracle
