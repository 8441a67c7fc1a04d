#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace selectlab {

/// A subset of a small universe (ground points or game items), one bit per element.
using Mask = std::uint64_t;

constexpr Mask bit(int i) noexcept { return Mask{1} << i; }

constexpr Mask low_bits(int n) noexcept { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

constexpr bool is_subset(Mask a, Mask b) noexcept { return (a & ~b) == 0; }

inline int popcount(Mask m) noexcept { return std::popcount(m); }

template <class F>
void for_each_bit(Mask m, F&& f) {
  while (m != 0) {
    f(std::countr_zero(m));
    m &= m - 1;
  }
}

inline std::vector<int> bits_of(Mask m) {
  std::vector<int> out;
  for_each_bit(m, [&](int i) { out.push_back(i); });
  return out;
}

template <class Range>
Mask mask_of(const Range& items) {
  Mask m = 0;
  for (int i : items) m |= bit(i);
  return m;
}

}  // namespace selectlab
