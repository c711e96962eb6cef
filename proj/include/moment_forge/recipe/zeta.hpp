#pragma once

#include <array>
#include <cmath>
#include <complex>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include "moment_forge/arith/shift_multiset.hpp"
#include "moment_forge/error.hpp"

namespace moment_forge::recipe {

/// Riemann zeta by Euler-Maclaurin summation with N = max(20, |Im s| + 20)
/// head terms and 20 Bernoulli corrections. Relative error ~1e-14 for
/// |Im s| <= 50, Re s >= -1.
inline Complex zeta(Complex s) {
  if (s == Complex(1.0, 0.0)) throw PoleError("zeta has a pole at s = 1");
  constexpr int kTerms = 20;
  static const std::array<double, kTerms + 1> coeff = [] {
    std::array<double, kTerms + 1> c{};
    for (int k = 1; k <= kTerms; ++k)
      c[k] = boost::math::bernoulli_b2n<double>(k) / boost::math::factorial<double>(2 * k);
    return c;
  }();

  const int n = static_cast<int>(std::max(20.0, std::abs(s.imag()) + 20.0));
  Complex sum = 0;
  for (int k = n - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  const double nd = n;
  const Complex n_s = std::pow(nd, -s);
  sum += nd * n_s / (s - 1.0) + 0.5 * n_s;

  // B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
  Complex rising = s;
  Complex power = n_s / nd;
  for (int k = 1; k <= kTerms; ++k) {
    Complex term = coeff[k] * rising * power;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    power /= nd * nd;
  }
  return sum;
}

/// Z(A, B) = prod_{a in A, b in B} zeta(1 + a + b).
inline Complex z_pair(const arith::ShiftMultiset& a, const arith::ShiftMultiset& b) {
  Complex z = 1.0;
  for (auto x : a)
    for (auto y : b) {
      if (x + y == Complex(0.0)) throw PoleError("Z(A,B) has a pole: a + b = 0 for a = " +
                                                 arith::ShiftMultiset::format(x) + ", b = " +
                                                 arith::ShiftMultiset::format(y) + "; perturb the shifts");
      z *= zeta(1.0 + x + y);
    }
  return z;
}

}  // namespace moment_forge::recipe
