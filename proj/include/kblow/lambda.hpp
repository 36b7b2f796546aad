#pragma once

#include <vector>

#include "kblow/bundle.hpp"

namespace kblow {

// Lambda-ring operations on weight multisets and on virtual classes of
// two-term complexes. Symmetric powers of a difference are defined by the
// expansion s_n(a - b) = sum_j (-1)^j s_{n-j}(a) e_j(b); this single
// convention reproduces the Koszul-type complexes for both S^n{V->W} and its
// dual at the level of classes.

namespace detail {

// e_0..e_top of the weight multiset, by the one-weight-at-a-time recurrence.
inline std::vector<LaurentPoly> elementary_table(const Bundle& b, int top) {
  const VarShape shape = b.shape();
  int hi = std::min(top, b.rank());
  if (hi < 0) hi = 0;
  std::vector<LaurentPoly> e(static_cast<size_t>(hi) + 1, LaurentPoly::zero(shape));
  e[0] = LaurentPoly::one(shape);
  int used = 0;
  for (const auto& wt : b.weights()) {
    ++used;
    for (int j = std::min(hi, used); j >= 1; --j)
      e[j] += e[j - 1].shifted(wt);
  }
  return e;
}

}  // namespace detail

// Elementary symmetric character of the n-th exterior power; zero outside
// 0 <= n <= rank.
inline LaurentPoly e_char(const Bundle& b, int n) {
  if (n < 0 || n > b.rank()) return LaurentPoly::zero(b.shape());
  return detail::elementary_table(b, n)[static_cast<size_t>(n)];
}

// Complete homogeneous character of the n-th symmetric power, via the
// Newton-style recurrence h_n = sum_{i>=1} (-1)^{i-1} e_i h_{n-i}.
// S^n := 0 for n < 0.
inline LaurentPoly h_char(const Bundle& b, int n) {
  const VarShape shape = b.shape();
  if (n < 0) return LaurentPoly::zero(shape);
  if (n == 0) return LaurentPoly::one(shape);
  auto e = detail::elementary_table(b, std::min(n, b.rank()));
  std::vector<LaurentPoly> h(static_cast<size_t>(n) + 1, LaurentPoly::zero(shape));
  h[0] = LaurentPoly::one(shape);
  for (int m = 1; m <= n; ++m) {
    LaurentPoly acc(shape);
    for (int i = 1; i <= std::min<int>(m, static_cast<int>(e.size()) - 1); ++i) {
      LaurentPoly t = e[static_cast<size_t>(i)] * h[static_cast<size_t>(m - i)];
      if (i % 2 == 0) t = -t;
      acc += t;
    }
    h[static_cast<size_t>(m)] = std::move(acc);
  }
  return h[static_cast<size_t>(n)];
}

// Class of S^n{V -> W}: sum_i (-1)^i e_i(V) h_{n-i}(W), the lambda-ring
// expansion of s_n([W] - [V]).
inline LaurentPoly sym_virtual(const TwoTermComplex& f, int n) {
  const VarShape shape = f.shape();
  if (n < 0) return LaurentPoly::zero(shape);
  LaurentPoly acc(shape);
  int top = std::min(n, f.v.rank());
  auto e = detail::elementary_table(f.v, top);
  for (int i = 0; i <= top; ++i) {
    LaurentPoly t = e[static_cast<size_t>(i)] * h_char(f.w, n - i);
    if (i % 2) t = -t;
    acc += t;
  }
  return acc;
}

// The dualized pair (weights inverted); homological shifts are folded into
// the class convention above, so sym_virtual(dual_complex(f), n) is the
// class of S^n(F^dual).
inline TwoTermComplex dual_complex(const TwoTermComplex& f) { return f.dual(); }

// det(F) = det(W) det(V)^{-1}, an invertible monomial character.
inline ExponentVector det_class(const TwoTermComplex& f) {
  return f.w.det() * f.v.det().inverse();
}

}  // namespace kblow
