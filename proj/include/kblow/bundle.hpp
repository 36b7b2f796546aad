#pragma once

#include <algorithm>
#include <vector>

#include "kblow/laurent.hpp"

namespace kblow {

// An equivariant locally free sheaf split into its weight multiset. Weights
// are kept sorted so identical bundles compare and serialize identically.
class Bundle {
 public:
  Bundle() = default;

  explicit Bundle(VarShape shape) : shape_(shape) {}

  Bundle(VarShape shape, std::vector<ExponentVector> weights)
      : shape_(shape), weights_(std::move(weights)) {
    for (const auto& w : weights_)
      if (!(w.shape() == shape_)) throw kb_error("Bundle: weight shape mismatch");
    std::sort(weights_.begin(), weights_.end());
  }

  static Bundle empty(VarShape shape) { return Bundle(shape); }

  const VarShape& shape() const noexcept { return shape_; }
  int rank() const noexcept { return static_cast<int>(weights_.size()); }
  const std::vector<ExponentVector>& weights() const noexcept { return weights_; }
  bool is_empty() const noexcept { return weights_.empty(); }

  LaurentPoly character() const {
    LaurentPoly p(shape_);
    for (const auto& w : weights_) p.add_term(w, 1);
    return p;
  }

  Bundle dual() const {
    std::vector<ExponentVector> d;
    d.reserve(weights_.size());
    for (const auto& w : weights_) d.push_back(w.torus_dual());
    return Bundle(shape_, std::move(d));
  }

  Bundle lift(VarShape target) const {
    std::vector<ExponentVector> d;
    d.reserve(weights_.size());
    for (const auto& w : weights_) d.push_back(w.lift(target));
    return Bundle(target, std::move(d));
  }

  // Product of all weights: the determinant character.
  ExponentVector det() const {
    ExponentVector m = ExponentVector::unit(shape_);
    for (const auto& w : weights_) m = m * w;
    return m;
  }

  Bundle direct_sum(const Bundle& o) const {
    if (!(shape_ == o.shape_)) throw kb_error("Bundle: shape mismatch in direct sum");
    std::vector<ExponentVector> d = weights_;
    d.insert(d.end(), o.weights_.begin(), o.weights_.end());
    return Bundle(shape_, std::move(d));
  }

  bool all_weights_nontrivial() const {
    return std::none_of(weights_.begin(), weights_.end(),
                        [](const ExponentVector& w) { return w.is_unit(); });
  }

  bool weights_pairwise_distinct() const {
    return std::adjacent_find(weights_.begin(), weights_.end()) == weights_.end();
  }

  friend bool operator==(const Bundle&, const Bundle&) = default;

  std::string str() const {
    std::string s = "{";
    for (size_t i = 0; i < weights_.size(); ++i) {
      if (i) s += ", ";
      s += weights_[i].str();
    }
    return s + "}";
  }

 private:
  VarShape shape_;
  std::vector<ExponentVector> weights_;
};

// A complex {V -> W} of tor-amplitude [0,1], split into weight multisets;
// only the K-class [W] - [V] matters here, so no differential is stored.
// Its rank w - v is the virtual codimension when the complex is a conormal.
struct TwoTermComplex {
  Bundle v;  // degree-1 term
  Bundle w;  // degree-0 term

  TwoTermComplex() = default;

  TwoTermComplex(Bundle v_, Bundle w_) : v(std::move(v_)), w(std::move(w_)) {
    if (!(v.shape() == w.shape())) throw kb_error("TwoTermComplex: shape mismatch");
  }

  const VarShape& shape() const noexcept { return v.shape(); }
  int rank() const noexcept { return w.rank() - v.rank(); }

  LaurentPoly character() const { return w.character() - v.character(); }

  TwoTermComplex dual() const { return TwoTermComplex(v.dual(), w.dual()); }

  TwoTermComplex lift(VarShape target) const {
    return TwoTermComplex(v.lift(target), w.lift(target));
  }

  TwoTermComplex direct_sum(const TwoTermComplex& o) const {
    return TwoTermComplex(v.direct_sum(o.v), w.direct_sum(o.w));
  }

  bool all_weights_nontrivial() const {
    return v.all_weights_nontrivial() && w.all_weights_nontrivial();
  }

  friend bool operator==(const TwoTermComplex&, const TwoTermComplex&) = default;

  std::string str() const { return "{" + v.str() + " -> " + w.str() + "}"; }
};

// Parity sign (-1)^k for possibly negative k.
inline int sign_pow(long long k) { return (k % 2) ? -1 : 1; }

}  // namespace kblow
