#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "moment_forge/arith/g_local.hpp"
#include "moment_forge/arith/number_theory.hpp"
#include "moment_forge/arith/shift_multiset.hpp"
#include "moment_forge/error.hpp"
#include "moment_forge/recipe/zeta.hpp"

namespace moment_forge::recipe {

using arith::ShiftMultiset;

namespace detail {

inline void require_simple_poles(const ShiftMultiset& a) {
  if (a.has_repeats()) throw PoleError("repeated shifts give higher-order poles; perturb the shifts first");
}

/// Z(A'_{-alpha}) = prod_{a' in A - {alpha}} zeta(1 + a' - alpha).
inline Complex z_removed(const ShiftMultiset& a, std::size_t i) {
  Complex z = 1.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (j != i) z *= zeta(1.0 + a[j] - a[i]);
  return z;
}

/// Memoised G_A(1 - alpha_i, q) for one set A.
class GCache {
 public:
  explicit GCache(ShiftMultiset a) : a_(std::move(a)), local_(a_.size()) {}

  Complex operator()(std::size_t i, std::uint64_t q) {
    if (q == 1) return 1.0;
    if (a_.size() == 1) return 0.0;  // A' is empty
    Complex g = 1.0;
    for (auto [p, e] : arith::factorize(q)) {
      auto key = std::make_pair(p, e);
      auto it = local_[i].find(key);
      if (it == local_[i].end()) it = local_[i].emplace(key, arith::g_local(a_, a_[i], p, e)).first;
      g *= it->second;
      if (g == 0.0) break;
    }
    return g;
  }

 private:
  ShiftMultiset a_;
  std::vector<std::map<std::pair<std::uint64_t, int>, Complex>> local_;
};

}  // namespace detail

/// R_A(y, q) = sum_{alpha in A} q^{alpha - 1} Z(A'_{-alpha}) G_A(1 - alpha, q) y^{-alpha}.
inline Complex residue_r(const ShiftMultiset& a, double y, std::uint64_t q) {
  if (q == 0) throw DomainError("q must be positive");
  detail::require_simple_poles(a);
  detail::GCache g(a);
  Complex sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Complex alpha = a[i];
    sum += std::pow(static_cast<double>(q), alpha - 1.0) * detail::z_removed(a, i) * g(i, q) * std::pow(y, -alpha);
  }
  return sum;
}

/// R*_{A,B}(y; h) truncated at q <= Q, kept as the coefficients C_{ab} of
/// y^{-a-b} so it can be evaluated at many y cheaply.
struct ResidueStar {
  struct Term {
    Complex alpha, beta;
    Complex coefficient;
    Complex tail;  // part of the coefficient from q in (Q/10, Q]
  };
  std::vector<Term> terms;
  std::uint64_t q_max = 0;

  Complex operator()(double y) const {
    Complex s = 0;
    for (const auto& t : terms) s += t.coefficient * std::pow(y, -(t.alpha + t.beta));
    return s;
  }
  /// Magnitude of the last decade of the q-sum at y.
  double tail(double y) const {
    Complex s = 0;
    for (const auto& t : terms) s += t.tail * std::pow(y, -(t.alpha + t.beta));
    return std::abs(s);
  }
};

inline ResidueStar residue_star_expansion(const ShiftMultiset& a, const ShiftMultiset& b, std::uint64_t h,
                                          std::uint64_t q_max) {
  if (h == 0) throw DomainError("h must be positive");
  if (q_max == 0) throw DomainError("Q_max must be positive");
  detail::require_simple_poles(a);
  detail::require_simple_poles(b);
  detail::GCache ga(a), gb(b);
  ResidueStar out;
  out.q_max = q_max;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Complex alpha = a[i], beta = b[j];
      Complex sum = 0, tail = 0;
      for (std::uint64_t q = 1; q <= q_max; ++q) {
        const auto r = arith::ramanujan_sum(q, h);
        if (r == 0) continue;
        const Complex gq = ga(i, q);
        if (gq == 0.0) continue;
        const Complex term = static_cast<double>(r) * std::pow(static_cast<double>(q), alpha + beta - 2.0) * gq *
                             gb(j, q);
        sum += term;
        if (q > q_max / 10) tail += term;
      }
      const Complex z = detail::z_removed(a, i) * detail::z_removed(b, j);
      out.terms.push_back({alpha, beta, z * sum, z * tail});
    }
  return out;
}

struct SeriesValue {
  Complex value = 0;
  double tail = 0;  // |last decade of the q-sum|
};

/// R*_{A,B}(y; h) = sum_{q <= Q} r_q(h) R_A(y, q) R_B(y, q).
inline SeriesValue residue_r_star(const ShiftMultiset& a, const ShiftMultiset& b, double y, std::uint64_t h,
                                  std::uint64_t q_max = 10000) {
  auto expansion = residue_star_expansion(a, b, h, q_max);
  return {expansion(y), expansion.tail(y)};
}

/// Delta-method prediction for <tau_A(m) tau_B(n)> on mN - nM = h at m = u:
///   sum_{a, b} u^{-a-b} M^{-1+b} N^{-b} Z(A'_{-a}) Z(B'_{-b})
///     sum_{d | h} d^{-(1-a-b)} sum_{q <= Q} mu(q) (qd,M)^{1-b} (qd,N)^{1-a} / q^{2-a-b}
///       G_A(1-a, qd/(qd,N)) G_B(1-b, qd/(qd,M)).
inline SeriesValue delta_average(const ShiftMultiset& a, const ShiftMultiset& b, std::uint64_t m_mod,
                                 std::uint64_t n_mod, std::int64_t h, double u, std::uint64_t q_max = 10000) {
  if (h == 0) throw DomainError("h = 0 is the semi-diagonal case; delta_average needs h != 0");
  if (m_mod == 0 || n_mod == 0 || std::gcd(m_mod, n_mod) != 1) throw DomainError("M and N must be coprime and positive");
  if (q_max == 0) throw DomainError("Q_max must be positive");
  detail::require_simple_poles(a);
  detail::require_simple_poles(b);
  const auto divs = arith::divisors(static_cast<std::uint64_t>(std::llabs(h)));
  const double md = static_cast<double>(m_mod), nd = static_cast<double>(n_mod);
  detail::GCache ga(a), gb(b);
  SeriesValue out;
  Complex tail = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Complex alpha = a[i], beta = b[j];
      const Complex outer = std::pow(u, -alpha - beta) * std::pow(md, -1.0 + beta) * std::pow(nd, -beta) *
                            detail::z_removed(a, i) * detail::z_removed(b, j);
      Complex sum = 0;
      for (auto d : divs)
        for (std::uint64_t q = 1; q <= q_max; ++q) {
          const int mu = arith::mobius(q);
          if (mu == 0) continue;
          const std::uint64_t qd = q * d;
          const std::uint64_t gn = std::gcd(qd, n_mod), gm = std::gcd(qd, m_mod);
          const Complex gq = ga(i, qd / gn);
          if (gq == 0.0) continue;
          const Complex term = static_cast<double>(mu) * std::pow(static_cast<double>(d), -(1.0 - alpha - beta)) *
                               std::pow(static_cast<double>(gm), 1.0 - beta) *
                               std::pow(static_cast<double>(gn), 1.0 - alpha) *
                               std::pow(static_cast<double>(q), -(2.0 - alpha - beta)) * gq * gb(j, qd / gm);
          sum += term;
          if (q > q_max / 10) tail += outer * term;
        }
      out.value += outer * sum;
    }
  out.tail = std::abs(tail);
  return out;
}

}  // namespace moment_forge::recipe
