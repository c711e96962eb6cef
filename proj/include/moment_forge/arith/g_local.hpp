#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "moment_forge/arith/number_theory.hpp"
#include "moment_forge/arith/shift_multiset.hpp"
#include "moment_forge/arith/symmetric.hpp"
#include "moment_forge/error.hpp"

namespace moment_forge::arith {

/// G_A(1 - alpha, p^r) with A' = A - {alpha}:
///   prod_{a in A'} (1 - p^{-(1 + a - alpha)}) * sum_j tau_{A'}(p^{j+r}) p^{-j(1 - alpha)}.
/// The j-series stops once three consecutive terms fall below 1e-13 of the partial sum.
inline Complex g_local(const ShiftMultiset& shifts, Complex alpha, std::uint64_t p, int r) {
  auto rest = shifts.remove(alpha);
  if (r == 0) return 1.0;
  if (rest.empty()) return 0.0;

  const double pd = static_cast<double>(p);
  std::vector<Complex> z;
  z.reserve(rest.size());
  for (auto a : rest) z.push_back(std::pow(pd, -a));
  HomogeneousStream<Complex> h(std::move(z));
  for (int i = 0; i < r; ++i) h.next();

  const Complex ratio = std::pow(pd, -(1.0 - alpha));
  Complex weight = 1.0, sum = 0.0;
  int small = 0;
  for (int j = 0; j < 4000; ++j) {
    Complex term = h.next() * weight;
    sum += term;
    weight *= ratio;
    small = std::abs(term) <= 1e-13 * std::abs(sum) ? small + 1 : 0;
    if (small >= 3) break;
  }

  Complex product = 1.0;
  for (auto a : rest) product *= 1.0 - std::pow(pd, -(1.0 + a - alpha));
  return product * sum;
}

/// G_A(1 - alpha, q), multiplicative in q.
inline Complex g_factor(const ShiftMultiset& shifts, Complex alpha, std::uint64_t q) {
  if (q == 0) throw DomainError("G_A is defined for q >= 1");
  Complex g = 1.0;
  for (auto [p, e] : factorize(q)) {
    g *= g_local(shifts, alpha, p, e);
    if (g == 0.0) break;
  }
  if (q == 1) shifts.remove(alpha);  // keeps the membership check for q = 1
  return g;
}

}  // namespace moment_forge::arith
