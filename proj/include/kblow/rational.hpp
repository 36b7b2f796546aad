#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "kblow/laurent.hpp"

namespace kblow {

// A localized equivariant class: a fraction of Laurent polynomials whose
// denominator is a product of binomials (1 - m) with m a non-unit monomial.
// Any unit-monomial factor of the denominator is absorbed into the numerator
// (monomials are invertible), so only the binomial factors are stored, with
// multiplicity. Equality is decided by cross-multiplication, never by
// normal form.
class RationalClass {
 public:
  using FactorMap = std::map<ExponentVector, int>;  // m -> multiplicity of (1 - m)

  RationalClass() = default;

  explicit RationalClass(LaurentPoly num) : num_(std::move(num)) {}

  RationalClass(LaurentPoly num, const std::vector<ExponentVector>& factors)
      : num_(std::move(num)) {
    for (const auto& m : factors) push_factor(m);
    prune_if_zero();
  }

  static RationalClass zero(VarShape shape) { return RationalClass(LaurentPoly::zero(shape)); }
  static RationalClass one(VarShape shape) { return RationalClass(LaurentPoly::one(shape)); }

  const VarShape& shape() const noexcept { return num_.shape(); }
  const LaurentPoly& numerator() const noexcept { return num_; }
  const FactorMap& den_factors() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  LaurentPoly expanded_den() const {
    LaurentPoly d = LaurentPoly::one(shape());
    for (const auto& [m, mult] : den_)
      for (int i = 0; i < mult; ++i) d *= LaurentPoly::one_minus(m);
    return d;
  }

  RationalClass operator-() const {
    RationalClass r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RationalClass operator*(const RationalClass& a, const RationalClass& b) {
    RationalClass r(a.num_ * b.num_);
    if (!r.num_.is_zero()) {
      r.den_ = a.den_;
      for (const auto& [m, mult] : b.den_) r.den_[m] += mult;
    }
    return r;
  }

  friend RationalClass operator*(const RationalClass& a, const LaurentPoly& p) {
    RationalClass r(a.num_ * p);
    if (!r.num_.is_zero()) r.den_ = a.den_;
    return r;
  }

  friend RationalClass operator*(const LaurentPoly& p, const RationalClass& a) { return a * p; }

  friend RationalClass operator*(const RationalClass& a, const Int& c) {
    RationalClass r(a.num_ * c);
    if (!r.num_.is_zero()) r.den_ = a.den_;
    return r;
  }

  // Common denominator = multiset union of the binomial factors; each
  // numerator is scaled by the factors it is missing.
  friend RationalClass operator+(const RationalClass& a, const RationalClass& b) {
    a.num_.require_same_shape(b.num_);
    FactorMap all = a.den_;
    for (const auto& [m, mult] : b.den_) {
      auto it = all.find(m);
      if (it == all.end())
        all.emplace(m, mult);
      else
        it->second = std::max(it->second, mult);
    }
    LaurentPoly num = a.num_ * missing_factors(a.den_, all, a.shape()) +
                      b.num_ * missing_factors(b.den_, all, b.shape());
    RationalClass r(std::move(num));
    if (!r.num_.is_zero()) r.den_ = std::move(all);
    return r;
  }

  friend RationalClass operator-(const RationalClass& a, const RationalClass& b) {
    return a + (-b);
  }

  RationalClass& operator+=(const RationalClass& o) { return *this = *this + o; }
  RationalClass& operator-=(const RationalClass& o) { return *this = *this - o; }
  RationalClass& operator*=(const RationalClass& o) { return *this = *this * o; }

  // Divide by a further product of binomials (1 - m).
  RationalClass over(const std::vector<ExponentVector>& factors) const {
    RationalClass r = *this;
    if (r.num_.is_zero()) return r;
    for (const auto& m : factors) r.push_factor(m);
    return r;
  }

  // Divide by a monomial: multiply the numerator by its inverse.
  RationalClass over_monomial(const ExponentVector& m) const {
    RationalClass r = *this;
    r.num_ = r.num_.shifted(m.inverse());
    return r;
  }

  RationalClass dual() const {
    RationalClass r(num_.dual());
    if (!r.num_.is_zero())
      for (const auto& [m, mult] : den_) r.den_[m.torus_dual()] += mult;
    return r;
  }

  RationalClass lift(VarShape target) const {
    RationalClass r(num_.lift(target));
    if (!r.num_.is_zero())
      for (const auto& [m, mult] : den_) r.den_[m.lift(target)] += mult;
    return r;
  }

  std::string str() const {
    if (den_.empty()) return num_.str();
    std::string s = "(" + num_.str() + ")";
    s += " / [";
    bool first = true;
    for (const auto& [m, mult] : den_) {
      if (!first) s += " ";
      first = false;
      s += "(1-" + m.str() + ")";
      if (mult > 1) s += "^" + std::to_string(mult);
    }
    s += "]";
    return s;
  }

  std::string json_str() const {
    std::string s = "{\"num\":" + num_.json_str() + ",\"den\":[";
    bool first = true;
    for (const auto& [m, mult] : den_) {
      if (!first) s += ",";
      first = false;
      s += "{\"m\":[";
      for (size_t i = 0; i < m.exponents().size(); ++i) {
        if (i) s += ",";
        s += std::to_string(m.exponents()[i]);
      }
      s += "],\"mult\":" + std::to_string(mult) + "}";
    }
    return s + "]}";
  }

 private:
  static LaurentPoly missing_factors(const FactorMap& have, const FactorMap& all, VarShape shape) {
    LaurentPoly p = LaurentPoly::one(shape);
    for (const auto& [m, mult] : all) {
      auto it = have.find(m);
      int lacking = mult - (it == have.end() ? 0 : it->second);
      for (int i = 0; i < lacking; ++i) p *= LaurentPoly::one_minus(m);
    }
    return p;
  }

  void push_factor(const ExponentVector& m) {
    if (!(m.shape() == shape())) throw kb_error("rank mismatch in denominator factor");
    if (m.is_unit()) throw kb_error("zero denominator: factor (1-1) vanishes");
    den_[m] += 1;
  }

  void prune_if_zero() {
    if (num_.is_zero()) den_.clear();
  }

  LaurentPoly num_;
  FactorMap den_;
};

// The geometric-series inverse 1/(1-m) of a localized Euler factor. The
// monomial must be a non-unit character (no trivial sub-representations).
inline RationalClass geom_inv(const ExponentVector& m) {
  if (m.is_unit()) throw kb_error("geom_inv: trivial character 1-m has no localized inverse");
  return RationalClass(LaurentPoly::one(m.shape()), {m});
}

// Equality in the fraction field, by cross-multiplication of numerators.
// Common denominator factors are cancelled first; the Laurent ring is a
// domain, so cancellation is exact.
inline bool equivalent(const RationalClass& a, const RationalClass& b) {
  a.numerator().require_same_shape(b.numerator());
  RationalClass::FactorMap da = a.den_factors(), db = b.den_factors();
  for (auto it = da.begin(); it != da.end(); ++it) {
    auto jt = db.find(it->first);
    if (jt == db.end()) continue;
    int common = std::min(it->second, jt->second);
    it->second -= common;
    jt->second -= common;
  }
  LaurentPoly pa = LaurentPoly::one(a.shape());
  for (const auto& [m, mult] : db)
    for (int i = 0; i < mult; ++i) pa *= LaurentPoly::one_minus(m);
  LaurentPoly pb = LaurentPoly::one(b.shape());
  for (const auto& [m, mult] : da)
    for (int i = 0; i < mult; ++i) pb *= LaurentPoly::one_minus(m);
  return a.numerator() * pa == b.numerator() * pb;
}

inline bool equivalent(const RationalClass& a, const LaurentPoly& p) {
  return equivalent(a, RationalClass(p));
}

// Truncated power-series expansion in the first aux slot (the grading
// variable q): each denominator factor 1/(1-m) is replaced by its geometric
// series, which converges in the q-adic sense exactly when m has strictly
// positive q-exponent.
inline LaurentPoly rat_series(const RationalClass& a, int order) {
  if (order < 0) throw kb_error("rat_series: negative order");
  const VarShape shape = a.shape();
  if (shape.aux < 1) throw kb_error("rat_series: shape has no grading slot");
  const int q = 0;
  for (const auto& [m, mult] : a.den_factors())
    if (m.aux_degree(q) <= 0)
      throw kb_error("rat_series: non-expandable denominator factor (1-" + m.str() +
                     ") has q-exponent <= 0");
  // Terms of negative q-degree in the numerator can absorb high-degree
  // factor terms back down below the cutoff, so expand factors further.
  int shift = std::max(0, -a.numerator().min_aux_degree(q));
  int inner = order + shift;
  LaurentPoly acc = LaurentPoly::one(shape);
  for (const auto& [m, mult] : a.den_factors()) {
    for (int rep = 0; rep < mult; ++rep) {
      LaurentPoly geo(shape);
      ExponentVector p = ExponentVector::unit(shape);
      int deg = m.aux_degree(q);
      for (int k = 0; k * deg <= inner; ++k) {
        geo.add_term(p, 1);
        p = p * m;
      }
      acc = (acc * geo).truncated_aux(q, inner);
    }
  }
  return (acc * a.numerator()).truncated_aux(q, order);
}

}  // namespace kblow
