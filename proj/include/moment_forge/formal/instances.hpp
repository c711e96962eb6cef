#pragma once

#include <array>
#include <random>
#include <string>
#include <vector>

#include "moment_forge/formal/identities.hpp"

namespace moment_forge::formal {

/// Fresh symbols prefix1, prefix2, ... as a set of `size` formal shifts.
inline FormalSet symbol_set(SymbolTable& symbols, const std::string& prefix, int size) {
  FormalSet s;
  for (int i = 1; i <= size; ++i) s.push_back(symbols.symbol(prefix + std::to_string(i)));
  return s;
}

inline void check_sizes(const std::vector<int>& sizes, std::size_t count) {
  if (sizes.size() != count) throw DomainError("expected " + std::to_string(count) + " set sizes");
  for (int s : sizes)
    if (s < 0) throw DomainError("set sizes must be non-negative");
}

/// Four-function identity with a, A, b, B the divisor sequences of symbolic sets of the given sizes.
inline Certificate verify_lemma1(const std::vector<int>& sizes, int degree) {
  check_sizes(sizes, 4);
  SymbolTable sy;
  std::array<SeqFun, 4> f{SeqFun::unit(), SeqFun::unit(), SeqFun::unit(), SeqFun::unit()};
  const char* prefix[] = {"a", "A", "b", "B"};
  for (int i = 0; i < 4; ++i) f[i] = set_fun(symbol_set(sy, prefix[i], sizes[i]));
  return timed_certificate("lemma1", sizes, sy, [&] { return lemma1_sides(f[0], f[1], f[2], f[3], degree); });
}

/// A random sequence supported on n <= support: each value has one or two
/// terms with coefficients p/q, |p| <= 9, 1 <= q <= 9, in symbols s1, s2.
inline SeqFun random_sequence(std::mt19937_64& rng, SymbolTable& symbols, int support) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9), pow(-2, 2), terms(1, 2);
  const Exponent s1 = symbols.symbol("s1"), s2 = symbols.symbol("s2");
  std::vector<LaurentPoly> values;
  for (int n = 0; n <= support; ++n) {
    LaurentPoly v;
    for (int t = terms(rng); t > 0; --t) v.add_term(s1 * pow(rng) + s2 * pow(rng), Rational(num(rng), den(rng)));
    values.push_back(std::move(v));
  }
  return SeqFun::from_values(std::move(values));
}

/// Four-function identity on random rational sequences supported on n <= 3;
/// set sizes do not apply and are reported empty.
inline Certificate verify_lemma1_random(std::uint64_t seed, int degree) {
  std::mt19937_64 rng(seed);
  SymbolTable sy;
  std::array<SeqFun, 4> f{random_sequence(rng, sy, 3), random_sequence(rng, sy, 3), random_sequence(rng, sy, 3),
                          random_sequence(rng, sy, 3)};
  return timed_certificate("lemma1", {}, sy,
                           [&] { return lemma1_sides(f[0], f[1], f[2], f[3], degree); });
}

/// Semi-diagonal identity with |A1|, |B1| >= 1 (alpha in A1, beta in B1) and symbolic elements.
inline Certificate verify_semidiagonal(const std::vector<int>& sizes, int degree) {
  check_sizes(sizes, 4);
  if (sizes[0] < 1 || sizes[1] < 1) throw DomainError("semidiagonal needs |A1| >= 1 and |B1| >= 1");
  SymbolTable sy;
  const Exponent alpha = sy.symbol("alpha"), beta = sy.symbol("beta");
  FormalSet a1 = set_union({alpha}, symbol_set(sy, "a", sizes[0] - 1));
  FormalSet b1 = set_union({beta}, symbol_set(sy, "b", sizes[1] - 1));
  FormalSet a2 = symbol_set(sy, "c", sizes[2]), b2 = symbol_set(sy, "d", sizes[3]);
  return timed_certificate("semidiagonal", sizes, sy,
                           [&] { return semidiagonal_sides(a1, b1, a2, b2, alpha, beta, degree); });
}

/// Reformulated two-swap identity with symbolic sets A, B, C, D of the given sizes.
inline Certificate verify_theorem2(const std::vector<int>& sizes, int degree) {
  check_sizes(sizes, 4);
  SymbolTable sy;
  const Exponent alpha = sy.symbol("alpha"), beta = sy.symbol("beta");
  const Exponent gamma = sy.symbol("gamma"), delta = sy.symbol("delta");
  FormalSet a = symbol_set(sy, "a", sizes[0]), b = symbol_set(sy, "b", sizes[1]);
  FormalSet c = symbol_set(sy, "c", sizes[2]), d = symbol_set(sy, "d", sizes[3]);
  return timed_certificate("theorem2", sizes, sy,
                           [&] { return theorem2_sides(a, b, c, d, alpha, beta, gamma, delta, degree); });
}

}  // namespace moment_forge::formal
