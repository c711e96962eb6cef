#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "moment_forge/error.hpp"

namespace moment_forge::empirical {

using int128 = __int128;

/// Frame of a Type-II tuple: M/N is the Farey fraction of order Q whose
/// mediant interval holds m1/n1, with h1 = m1 N - n1 M and h2 = m2 M - n2 N.
struct FareyFrame {
  std::int64_t m = 1, n = 1;  // M, N
  std::int64_t q = 1;         // Q
  std::int64_t h1 = 0, h2 = 0;
};

namespace detail {

/// Compares a/b with c/d for positive denominators.
inline int compare(int128 a, int128 b, int128 c, int128 d) {
  const int128 l = a * d, r = c * b;
  return l < r ? -1 : (l > r ? 1 : 0);
}

/// Fraction of F_Q (0 <= x <= 1) whose mediant interval contains x = num/den;
/// a tie at a mediant goes to the lower neighbour.
inline std::pair<std::int64_t, std::int64_t> nearest_farey(std::int64_t num, std::int64_t den, std::int64_t q) {
  std::int64_t ln = 0, ld = 1, hn = 1, hd = 1;
  if (compare(num, den, ln, ld) == 0) return {ln, ld};
  if (compare(num, den, hn, hd) == 0) return {hn, hd};
  // Stern-Brocot descent until the next mediant would leave F_Q. Runs of
  // steps in one direction are taken in one jump.
  while (true) {
    if (ld + hd > q) break;
    const std::int64_t mn = ln + hn, md = ld + hd;
    const int c = compare(num, den, mn, md);
    if (c == 0) return {mn, md};
    if (c < 0) {
      // hi <- (ln*k + hn)/(ld*k + hd) for the largest k keeping x below it and the denominator <= Q.
      std::int64_t k = (q - hd) / ld;
      std::int64_t lo_k = 1, hi_k = k;
      while (lo_k < hi_k) {
        std::int64_t mid = (lo_k + hi_k + 1) / 2;
        if (compare(num, den, ln * mid + hn, ld * mid + hd) < 0) lo_k = mid;
        else hi_k = mid - 1;
      }
      hn = ln * lo_k + hn;
      hd = ld * lo_k + hd;
      if (compare(num, den, hn, hd) == 0) return {hn, hd};
    } else {
      std::int64_t k = (q - ld) / hd;
      std::int64_t lo_k = 1, hi_k = k;
      while (lo_k < hi_k) {
        std::int64_t mid = (lo_k + hi_k + 1) / 2;
        if (compare(num, den, hn * mid + ln, hd * mid + ld) > 0) lo_k = mid;
        else hi_k = mid - 1;
      }
      ln = hn * lo_k + ln;
      ld = hd * lo_k + ld;
      if (compare(num, den, ln, ld) == 0) return {ln, ld};
    }
  }
  // ln/ld < x < hn/hd are neighbours in F_Q.
  const int c = compare(num, den, ln + hn, ld + hd);
  return c <= 0 ? std::pair{ln, ld} : std::pair{hn, hd};
}

inline std::int64_t narrow(int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw CapacityError("Farey frame value overflows 64 bits");
  return static_cast<std::int64_t>(v);
}

}  // namespace detail

/// Ratios m1/n1 > 1 are framed through n1/m1 with the roles of M and N swapped, so M > N there.
inline FareyFrame farey_decompose(std::int64_t m1, std::int64_t m2, std::int64_t n1, std::int64_t n2, std::int64_t q) {
  if (q < 1) throw DomainError("Farey order Q must be at least 1");
  if (m1 < 1 || m2 < 1 || n1 < 1 || n2 < 1) throw DomainError("m1, m2, n1, n2 must be positive");
  const std::int64_t g = std::gcd(m1, n1);
  const std::int64_t num = m1 / g, den = n1 / g;
  FareyFrame f;
  f.q = q;
  if (num <= den) {
    std::tie(f.m, f.n) = detail::nearest_farey(num, den, q);
  } else {
    std::tie(f.n, f.m) = detail::nearest_farey(den, num, q);
  }
  f.h1 = detail::narrow(int128(m1) * f.n - int128(n1) * f.m);
  f.h2 = detail::narrow(int128(m2) * f.m - int128(n2) * f.n);
  return f;
}

/// m1 m2 M N - n1 n2 M N == h1 m2 M + h2 m1 N - h1 h2, in 128-bit arithmetic.
inline bool farey_identity_holds(std::int64_t m1, std::int64_t m2, std::int64_t n1, std::int64_t n2,
                                 const FareyFrame& f) {
  const int128 mm = f.m, nn = f.n;
  const int128 lhs = int128(m1) * m2 * mm * nn - int128(n1) * n2 * mm * nn;
  const int128 rhs = int128(f.h1) * m2 * mm + int128(f.h2) * m1 * nn - int128(f.h1) * f.h2;
  return lhs == rhs;
}

}  // namespace moment_forge::empirical
