#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <utility>

#include "kblow/exponent.hpp"

namespace kblow {

// Coefficients are arbitrary-precision integers, so cross-multiplication
// equality checks can never overflow or wrap.
using Int = boost::multiprecision::cpp_int;

// Exact multivariate Laurent polynomial over the integers: an element of the
// representation ring of the ambient torus, optionally carrying grading
// slots. Terms are kept in lexicographic exponent order and never store a
// zero coefficient, so serialization is deterministic.
class LaurentPoly {
 public:
  using TermMap = std::map<ExponentVector, Int>;

  LaurentPoly() = default;
  explicit LaurentPoly(VarShape shape) : shape_(shape) {}

  static LaurentPoly zero(VarShape shape) { return LaurentPoly(shape); }

  static LaurentPoly constant(VarShape shape, Int c) {
    LaurentPoly p(shape);
    p.add_term(ExponentVector::unit(shape), std::move(c));
    return p;
  }

  static LaurentPoly one(VarShape shape) { return constant(shape, 1); }

  static LaurentPoly monomial(const ExponentVector& m, Int c = 1) {
    LaurentPoly p(m.shape());
    p.add_term(m, std::move(c));
    return p;
  }

  // 1 - m, the ubiquitous Koszul/geometric-series binomial.
  static LaurentPoly one_minus(const ExponentVector& m) {
    LaurentPoly p = one(m.shape());
    p.add_term(m, -1);
    return p;
  }

  const VarShape& shape() const noexcept { return shape_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  size_t term_count() const noexcept { return terms_.size(); }

  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_unit() && terms_.begin()->second == 1;
  }

  bool is_monomial() const { return terms_.size() == 1 && terms_.begin()->second == 1; }

  // The unique monomial of a unit-coefficient single-term polynomial.
  const ExponentVector& sole_monomial() const {
    if (!is_monomial()) throw kb_error("LaurentPoly: not a monomial");
    return terms_.begin()->first;
  }

  void add_term(const ExponentVector& m, Int c) {
    if (c == 0) return;
    if (!(m.shape() == shape_)) throw kb_error("rank mismatch in add_term");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, std::move(c));
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Int coefficient(const ExponentVector& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Int(0) : it->second;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    require_same_shape(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& o) {
    require_same_shape(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  LaurentPoly operator-() const {
    LaurentPoly r(shape_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.require_same_shape(b);
    LaurentPoly r(a.shape_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly& operator*=(const Int& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, coef] : terms_) coef *= c;
    return *this;
  }

  friend LaurentPoly operator*(LaurentPoly a, const Int& c) { return a *= c; }
  friend LaurentPoly operator*(const Int& c, LaurentPoly a) { return a *= c; }

  // Exact multiplication by a single monomial (an exponent shift).
  LaurentPoly shifted(const ExponentVector& m) const {
    LaurentPoly r(shape_);
    for (const auto& [t, c] : terms_) r.terms_.emplace(t * m, c);
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.shape_ == b.shape_ && a.terms_ == b.terms_;
  }

  // Derived dual: every torus weight is inverted, grading slots kept.
  LaurentPoly dual() const {
    LaurentPoly r(shape_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m.torus_dual(), c);
    return r;
  }

  int min_aux_degree(int slot) const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
      int a = m.aux_degree(slot);
      if (!d || a < *d) d = a;
    }
    return d.value_or(0);
  }

  int max_aux_degree(int slot) const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
      int a = m.aux_degree(slot);
      if (!d || a > *d) d = a;
    }
    return d.value_or(0);
  }

  // Drop every term of aux degree > order in the given slot.
  LaurentPoly truncated_aux(int slot, int order) const {
    LaurentPoly r(shape_);
    for (const auto& [m, c] : terms_)
      if (m.aux_degree(slot) <= order) r.terms_.emplace(m, c);
    return r;
  }

  // The coefficient of q^k in the given slot, with that slot zeroed out.
  LaurentPoly aux_coefficient(int slot, int k) const {
    LaurentPoly r(shape_);
    for (const auto& [m, c] : terms_) {
      if (m.aux_degree(slot) != k) continue;
      std::vector<int> e = m.exponents();
      e[shape_.torus + slot] = 0;
      r.add_term(ExponentVector(shape_, std::move(e)), c);
    }
    return r;
  }

  LaurentPoly lift(VarShape target) const {
    LaurentPoly r(target);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m.lift(target), c);
    return r;
  }

  void require_same_shape(const LaurentPoly& o) const {
    if (!(shape_ == o.shape_))
      throw kb_error("rank mismatch: " + to_string(shape_) + " vs " + to_string(o.shape_));
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Int a = c;
      if (first) {
        if (a < 0) {
          os << "-";
          a = -a;
        }
      } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      first = false;
      if (m.is_unit())
        os << a.str();
      else if (a == 1)
        os << m.str();
      else
        os << a.str() << "*" << m.str();
    }
    return os.str();
  }

  // Sorted {exponents, coefficient} records; coefficients as strings since
  // they are arbitrary-precision.
  std::string json_str() const {
    std::ostringstream os;
    os << "{\"shape\":{\"torus\":" << shape_.torus << ",\"aux\":" << shape_.aux
       << "},\"terms\":[";
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << ",";
      first = false;
      os << "{\"e\":[";
      for (size_t i = 0; i < m.exponents().size(); ++i) {
        if (i) os << ",";
        os << m.exponents()[i];
      }
      os << "],\"c\":\"" << c.str() << "\"}";
    }
    os << "]}";
    return os.str();
  }

 private:
  VarShape shape_;
  TermMap terms_;
};

// Product over a list of binomials (1 - m_i).
inline LaurentPoly product_one_minus(VarShape shape, const std::vector<ExponentVector>& ms) {
  LaurentPoly p = LaurentPoly::one(shape);
  for (const auto& m : ms) p *= LaurentPoly::one_minus(m);
  return p;
}

}  // namespace kblow
