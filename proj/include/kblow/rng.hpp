#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kblow/bundle.hpp"

namespace kblow {

// Deterministic generator (splitmix64). Used instead of <random> so that
// seeded grids and reports are bit-identical across platforms and library
// versions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n).
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }

  // Uniform in [lo, hi].
  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1))); }

 private:
  uint64_t state_;
};

// Nontrivial monomials with small exponents, the shared pool for seeded
// weight grids.
inline std::vector<ExponentVector> monomial_pool(VarShape shape, int max_exp = 1) {
  std::vector<ExponentVector> pool;
  std::vector<int> e(static_cast<size_t>(shape.total()), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == shape.torus) {
      ExponentVector m(shape, e);
      if (!m.is_unit()) pool.push_back(m);
      return;
    }
    for (int v = -max_exp; v <= max_exp; ++v) {
      e[static_cast<size_t>(i)] = v;
      rec(i + 1);
      e[static_cast<size_t>(i)] = 0;
    }
  };
  rec(0);
  return pool;
}

// Draw `count` pairwise distinct pool entries.
inline std::vector<ExponentVector> draw_distinct(Rng& rng,
                                                 const std::vector<ExponentVector>& pool,
                                                 int count) {
  if (count > static_cast<int>(pool.size()))
    throw kb_error("draw_distinct: pool too small");
  std::vector<size_t> idx;
  while (static_cast<int>(idx.size()) < count) {
    size_t k = static_cast<size_t>(rng.below(pool.size()));
    bool seen = false;
    for (size_t j : idx) seen |= (j == k);
    if (!seen) idx.push_back(k);
  }
  std::vector<ExponentVector> out;
  out.reserve(idx.size());
  for (size_t k : idx) out.push_back(pool[k]);
  return out;
}

}  // namespace kblow
