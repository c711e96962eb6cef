#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <vector>

#include "moment_forge/arith/number_theory.hpp"
#include "moment_forge/error.hpp"

namespace moment_forge::empirical {

/// A Type-II tuple (M, N, m1, m2, n1, n2, h1, h2) with N m1 = M n1 + h1 and M m2 = N n2 + h2.
struct TypeTwoTuple {
  __int128 big_m, big_n, m1, m2, n1, n2, h1, h2;

  bool consistent() const { return big_n * m1 == big_m * n1 + h1 && big_m * m2 == big_n * n2 + h2; }
  auto key() const { return std::array<__int128, 8>{big_m, big_n, m1, m2, n1, n2, h1, h2}; }
};

/// The divisor-quadruple map: with m_i = mu_i muhat_i, n_i = nu_i nuhat_i,
///   M~ = nu1 mu2 M, N~ = mu1 nu2 N, m1~ = muhat1 mu2, m2~ = mu1 muhat2,
///   n1~ = nuhat1 nu2, n2~ = nu1 nuhat2, h1~ = mu2 nu2 h1, h2~ = mu1 nu1 h2.
inline TypeTwoTuple apply_automorphism(const TypeTwoTuple& t, __int128 mu1, __int128 mu2, __int128 nu1, __int128 nu2) {
  return {nu1 * mu2 * t.big_m, mu1 * nu2 * t.big_n, (t.m1 / mu1) * mu2, mu1 * (t.m2 / mu2),
          (t.n1 / nu1) * nu2,  nu1 * (t.n2 / nu2),  mu2 * nu2 * t.h1,   mu1 * nu1 * t.h2};
}

/// Takes m = product of k distinct prime atoms and n = product of l more,
/// splits them as m = m1 m2, n = n1 n2 (alternate atoms to each factor), and
/// applies the map for every choice of sub-multisets A1 of A and B1 of B, i.e.
/// every choice of which atoms form mu1, mu2, nu1, nu2. Counts the distinct
/// consistent image tuples.
inline std::uint64_t automorphism_count(int k, int l) {
  if (k < 0 || l < 0 || k + l > 12) throw DomainError("automorphism_count needs k, l >= 0 and k + l <= 12");
  auto primes = arith::primes_up_to(100);
  std::vector<__int128> atoms_m(primes.begin(), primes.begin() + k);
  std::vector<__int128> atoms_n(primes.begin() + k, primes.begin() + k + l);
  TypeTwoTuple base{};
  base.m1 = base.m2 = base.n1 = base.n2 = 1;
  for (int i = 0; i < k; ++i) (i % 2 == 0 ? base.m1 : base.m2) *= atoms_m[i];
  for (int j = 0; j < l; ++j) (j % 2 == 0 ? base.n1 : base.n2) *= atoms_n[j];
  base.big_m = primes[k + l];
  base.big_n = primes[k + l + 1];
  base.h1 = base.big_n * base.m1 - base.big_m * base.n1;
  base.h2 = base.big_m * base.m2 - base.big_n * base.n2;

  std::set<std::array<__int128, 8>> images;
  for (std::uint32_t sa = 0; sa < (1u << k); ++sa)
    for (std::uint32_t sb = 0; sb < (1u << l); ++sb) {
      __int128 mu1 = 1, mu2 = 1, nu1 = 1, nu2 = 1;
      for (int i = 0; i < k; ++i)
        if (sa >> i & 1u) (i % 2 == 0 ? mu1 : mu2) *= atoms_m[i];
      for (int j = 0; j < l; ++j)
        if (sb >> j & 1u) (j % 2 == 0 ? nu1 : nu2) *= atoms_n[j];
      auto image = apply_automorphism(base, mu1, mu2, nu1, nu2);
      if (image.consistent()) images.insert(image.key());
    }
  return images.size();
}

}  // namespace moment_forge::empirical
