#pragma once

#include <compare>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kblow {

struct kb_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape of an exponent tuple: `torus` multiplicative character variables
// t1..tk followed by `aux` bookkeeping slots (a grading variable q, or
// line-bundle powers). Aux slots are inert under dualization.
struct VarShape {
  int torus = 0;
  int aux = 0;

  int total() const noexcept { return torus + aux; }
  friend bool operator==(const VarShape&, const VarShape&) = default;
};

inline std::string to_string(const VarShape& s) {
  return "(" + std::to_string(s.torus) + "+" + std::to_string(s.aux) + ")";
}

// A monomial t1^{e1}...tk^{ek} * q1^{a1}...: a character of the ambient
// torus, possibly twisted by grading slots. Comparison is lexicographic on
// the full exponent tuple and total.
class ExponentVector {
 public:
  ExponentVector() = default;

  ExponentVector(VarShape shape, std::vector<int> exps)
      : shape_(shape), e_(std::move(exps)) {
    if (static_cast<int>(e_.size()) != shape_.total())
      throw kb_error("ExponentVector: tuple length does not match shape " +
                     to_string(shape_));
  }

  static ExponentVector unit(VarShape shape) {
    return ExponentVector(shape, std::vector<int>(shape.total(), 0));
  }

  // Single torus variable t_{i+1}.
  static ExponentVector var(VarShape shape, int i, int power = 1) {
    if (i < 0 || i >= shape.torus) throw kb_error("ExponentVector: torus index out of range");
    std::vector<int> e(shape.total(), 0);
    e[i] = power;
    return ExponentVector(shape, std::move(e));
  }

  // Single aux variable q_{j+1}.
  static ExponentVector aux_var(VarShape shape, int j, int power = 1) {
    if (j < 0 || j >= shape.aux) throw kb_error("ExponentVector: aux index out of range");
    std::vector<int> e(shape.total(), 0);
    e[shape.torus + j] = power;
    return ExponentVector(shape, std::move(e));
  }

  const VarShape& shape() const noexcept { return shape_; }
  int operator[](int i) const { return e_[i]; }
  const std::vector<int>& exponents() const noexcept { return e_; }

  bool is_unit() const noexcept {
    for (int x : e_)
      if (x != 0) return false;
    return true;
  }

  int aux_degree(int slot) const {
    if (slot < 0 || slot >= shape_.aux) throw kb_error("ExponentVector: aux slot out of range");
    return e_[shape_.torus + slot];
  }

  ExponentVector operator*(const ExponentVector& o) const {
    require_same_shape(o);
    std::vector<int> e(e_);
    for (size_t i = 0; i < e.size(); ++i) e[i] += o.e_[i];
    return ExponentVector(shape_, std::move(e));
  }

  ExponentVector pow(int k) const {
    std::vector<int> e(e_);
    for (int& x : e) x *= k;
    return ExponentVector(shape_, std::move(e));
  }

  // Monomial inverse: negates every slot.
  ExponentVector inverse() const {
    std::vector<int> e(e_);
    for (int& x : e) x = -x;
    return ExponentVector(shape_, std::move(e));
  }

  // Dual character: negates the torus slots, aux slots untouched.
  ExponentVector torus_dual() const {
    std::vector<int> e(e_);
    for (int i = 0; i < shape_.torus; ++i) e[i] = -e[i];
    return ExponentVector(shape_, std::move(e));
  }

  // Embed into a larger shape; existing slots keep their position inside
  // their block, new slots are zero.
  ExponentVector lift(VarShape target) const {
    if (target.torus < shape_.torus || target.aux < shape_.aux)
      throw kb_error("ExponentVector: lift target smaller than current shape");
    std::vector<int> e(target.total(), 0);
    for (int i = 0; i < shape_.torus; ++i) e[i] = e_[i];
    for (int j = 0; j < shape_.aux; ++j) e[target.torus + j] = e_[shape_.torus + j];
    return ExponentVector(target, std::move(e));
  }

  friend bool operator==(const ExponentVector& a, const ExponentVector& b) {
    return a.shape_ == b.shape_ && a.e_ == b.e_;
  }

  friend std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b) {
    a.require_same_shape(b);
    return a.e_ <=> b.e_;
  }

  void require_same_shape(const ExponentVector& o) const {
    if (!(shape_ == o.shape_))
      throw kb_error("rank mismatch: " + to_string(shape_) + " vs " + to_string(o.shape_));
  }

  // "t1^2*t2^-1*q" with aux slots named q (single) or q1,q2,...
  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < shape_.total(); ++i) {
      if (e_[i] == 0) continue;
      if (!first) os << "*";
      first = false;
      if (i < shape_.torus)
        os << "t" << (i + 1);
      else if (shape_.aux == 1)
        os << "q";
      else
        os << "q" << (i - shape_.torus + 1);
      if (e_[i] != 1) os << "^" << e_[i];
    }
    if (first) os << "1";
    return os.str();
  }

 private:
  VarShape shape_;
  std::vector<int> e_;
};

using Monomial = ExponentVector;

}  // namespace kblow
