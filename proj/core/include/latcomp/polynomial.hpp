#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace latcomp {

/// Multilinear polynomial: each monomial is a product of distinct variables,
/// keyed by a bitmask over variable indices.
template <class T>
struct MultilinearPoly {
  std::map<std::uint32_t, T> terms;

  void add(std::uint32_t mono, const T& c) {
    auto [it, inserted] = terms.try_emplace(mono, c);
    if (!inserted) it->second += c;
  }
  void prune() {
    for (auto it = terms.begin(); it != terms.end();)
      it = it->second == T(0) ? terms.erase(it) : std::next(it);
  }
  [[nodiscard]] T coefficient(std::uint32_t mono) const {
    auto it = terms.find(mono);
    return it == terms.end() ? T(0) : it->second;
  }

  /// Coefficient polynomial of variable `v` (monomials containing v, with v dropped).
  [[nodiscard]] MultilinearPoly coefficient_of(unsigned v) const {
    MultilinearPoly out;
    const std::uint32_t bit = 1u << v;
    for (const auto& [mono, c] : terms)
      if (mono & bit) out.add(mono & ~bit, c);
    return out;
  }

  /// Substitute variable `v` = value.
  [[nodiscard]] MultilinearPoly substitute(unsigned v, const T& value) const {
    MultilinearPoly out;
    const std::uint32_t bit = 1u << v;
    for (const auto& [mono, c] : terms) {
      if (mono & bit) {
        T t = c;
        t *= value;
        out.add(mono & ~bit, t);
      } else {
        out.add(mono, c);
      }
    }
    return out;
  }

  MultilinearPoly& operator-=(const MultilinearPoly& o) {
    for (const auto& [mono, c] : o.terms) add(mono, T(0) - c);
    return *this;
  }

  /// this * (x_v - value); `v` must not occur in this polynomial.
  [[nodiscard]] MultilinearPoly times_shifted(unsigned v, const T& value) const {
    MultilinearPoly out;
    const std::uint32_t bit = 1u << v;
    for (const auto& [mono, c] : terms) {
      out.add(mono | bit, c);
      T t = c;
      t *= value;
      out.add(mono, T(0) - t);
    }
    return out;
  }

  friend bool operator==(MultilinearPoly a, MultilinearPoly b) {
    a.prune();
    b.prune();
    return a.terms == b.terms;
  }
};

/// Cell of a square block: either a constant or a variable.
template <class T>
struct BlockCell {
  int var = -1;  // -1 means constant
  T value{};
};

/// Leibniz expansion of det(block) for a k x k block given row-major.
/// Every permutation touches each cell at most once, so the result is multilinear.
template <class T>
MultilinearPoly<T> expand_determinant(const std::vector<BlockCell<T>>& block, std::size_t k) {
  MultilinearPoly<T> out;
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        if (perm[a] > perm[b]) ++inversions;
    T coef = inversions % 2 ? T(-1) : T(1);
    std::uint32_t mono = 0;
    bool zero = false;
    for (std::size_t row = 0; row < k && !zero; ++row) {
      const auto& cell = block[row * k + perm[row]];
      if (cell.var >= 0) {
        mono |= 1u << cell.var;
      } else if (cell.value == T(0)) {
        zero = true;
      } else {
        coef *= cell.value;
      }
    }
    if (!zero) out.add(mono, coef);
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.prune();
  return out;
}

/// Cofactors of one row of a constant k x k matrix (row-major).
template <class T>
std::vector<T> row_cofactors(const std::vector<T>& a, std::size_t k, std::size_t row) {
  std::vector<T> cof(k, T(0));
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    int inversions = 0;
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = x + 1; y < k; ++y)
        if (perm[x] > perm[y]) ++inversions;
    T prod = inversions % 2 ? T(-1) : T(1);
    for (std::size_t r = 0; r < k; ++r)
      if (r != row) prod *= a[r * k + perm[r]];
    cof[perm[row]] += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return cof;
}

}  // namespace latcomp
