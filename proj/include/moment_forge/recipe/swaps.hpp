#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "moment_forge/arith/shift_multiset.hpp"
#include "moment_forge/error.hpp"

namespace moment_forge::recipe {

using arith::ShiftMultiset;

/// One swap (U, V) with U a sub-multiset of A and V of B, |U| = |V|.
struct Swap {
  std::vector<std::size_t> u_index;
  std::vector<std::size_t> v_index;
  ShiftMultiset u, v;
  ShiftMultiset a_rest, b_rest;  // A - U, B - V

  std::size_t count() const { return u.size(); }
  /// sigma = sum_{a in U} a + sum_{b in V} b.
  Complex sigma() const { return u.sum() + v.sum(); }
  /// A - U + V^-
  ShiftMultiset swapped_a() const { return a_rest + v.negate(); }
  /// B - V + U^-
  ShiftMultiset swapped_b() const { return b_rest + u.negate(); }
};

/// All swaps, ordered by swap count and then by index masks.
inline std::vector<Swap> enumerate_swaps(const ShiftMultiset& a, const ShiftMultiset& b) {
  if (a.size() > 16 || b.size() > 16) throw CapacityError("swap enumeration supports at most 16 shifts per side");
  auto split = [](const ShiftMultiset& s, std::uint32_t mask, std::vector<std::size_t>& idx, ShiftMultiset& in,
                  ShiftMultiset& out) {
    std::vector<Complex> vin, vout;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (mask >> i & 1u) {
        idx.push_back(i);
        vin.push_back(s[i]);
      } else {
        vout.push_back(s[i]);
      }
    }
    in = ShiftMultiset(std::move(vin));
    out = ShiftMultiset(std::move(vout));
  };
  std::vector<Swap> swaps;
  const std::size_t kmax = std::min(a.size(), b.size());
  for (std::size_t k = 0; k <= kmax; ++k)
    for (std::uint32_t ma = 0; ma < (1u << a.size()); ++ma) {
      if (static_cast<std::size_t>(std::popcount(ma)) != k) continue;
      for (std::uint32_t mb = 0; mb < (1u << b.size()); ++mb) {
        if (static_cast<std::size_t>(std::popcount(mb)) != k) continue;
        Swap s;
        split(a, ma, s.u_index, s.u, s.a_rest);
        split(b, mb, s.v_index, s.v, s.b_rest);
        swaps.push_back(std::move(s));
      }
    }
  return swaps;
}

}  // namespace moment_forge::recipe
