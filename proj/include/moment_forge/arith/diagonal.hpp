#pragma once

#include <algorithm>
#include <cstdint>

#include "moment_forge/arith/divisor_table.hpp"

namespace moment_forge::arith {

/// sum_{n <= X} tau_A(n) tau_B(n) / n, summed in increasing n: the 0-swap recipe class.
inline Complex diagonal_series(const DivisorTable& a, const DivisorTable& b, std::uint64_t bound) {
  if (bound > a.bound() || bound > b.bound())
    throw CapacityError("diagonal sum to " + std::to_string(bound) + " exceeds the divisor tables");
  Complex sum = 0;
  for (std::uint64_t n = 1; n <= bound; ++n) sum += a[n] * b[n] / static_cast<double>(n);
  return sum;
}

}  // namespace moment_forge::arith
