#pragma once

#include "moment_forge/formal/seqfun.hpp"
#include "moment_forge/formal/series.hpp"

namespace moment_forge::formal {

/// C(A, B) = sum_M A(M) B(M) X^M.
inline FormalSeries c_op(const SeqFun& a, const SeqFun& b, int degree) {
  FormalSeries s(degree);
  for (int m = 0; m <= degree; ++m) s[m] = a(m) * b(m);
  return s;
}

/// F(a, A; b, B) = sum_{K, L, M} a(K) A(K + M) b(L) B(L + M) X^{K + L + M}.
inline FormalSeries f_op(const SeqFun& a, const SeqFun& big_a, const SeqFun& b, const SeqFun& big_b, int degree) {
  FormalSeries s(degree);
  for (int k = 0; k <= degree; ++k)
    for (int l = 0; k + l <= degree; ++l) {
      LaurentPoly ab = a(k) * b(l);
      if (ab.is_zero()) continue;
      for (int m = 0; k + l + m <= degree; ++m) s[k + l + m] += ab * big_a(k + m) * big_b(l + m);
    }
  return s;
}

/// Z(A) in sum form, sum_j A(j) X^j.
inline FormalSeries z_op(const SeqFun& a, int degree) {
  FormalSeries s(degree);
  for (int j = 0; j <= degree; ++j) s[j] = a(j);
  return s;
}

/// Z(A) in product form, prod_{a in A} (1 - X^{1+a})^{-1}, by series division.
inline FormalSeries z_product(const FormalSet& shifts, int degree) {
  FormalSeries denominator = FormalSeries::one(degree);
  for (const auto& a : shifts) denominator *= FormalSeries::one_minus(degree, 1, a);
  return denominator.reciprocal();
}

}  // namespace moment_forge::formal
