#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "moment_forge/arith/number_theory.hpp"
#include "moment_forge/arith/shift_multiset.hpp"
#include "moment_forge/arith/symmetric.hpp"
#include "moment_forge/error.hpp"
#include "moment_forge/parallel.hpp"
#include "moment_forge/recipe/zeta.hpp"

namespace moment_forge::recipe {

using arith::ShiftMultiset;

enum class TailMode { none, integral };

struct EulerProductConfig {
  std::uint64_t prime_cutoff = 100000;  // P
  int series_cutoff = 40;               // J: hard cap on the local j-series
  TailMode tail = TailMode::integral;

  void validate() const {
    if (prime_cutoff < 2) throw DomainError("prime cutoff P must be at least 2");
    if (series_cutoff < 8) throw DomainError("local series cutoff J must be at least 8");
  }
};

/// sum_{j <= J} tau_A(p^j) tau_B(p^j) p^{-j}; stops early once three
/// consecutive terms fall below 1e-17 of the partial sum.
inline Complex local_series(std::uint64_t p, const ShiftMultiset& a, const ShiftMultiset& b, int cutoff) {
  const double pd = static_cast<double>(p);
  std::vector<Complex> za, zb;
  for (auto x : a) za.push_back(std::pow(pd, -x));
  for (auto y : b) zb.push_back(std::pow(pd, -y));
  arith::HomogeneousStream<Complex> ha(std::move(za)), hb(std::move(zb));
  Complex sum = 0;
  double weight = 1;
  int small = 0;
  for (int j = 0; j <= cutoff; ++j) {
    Complex term = ha.next() * hb.next() * weight;
    sum += term;
    weight /= pd;
    small = std::abs(term) <= 1e-17 * std::abs(sum) ? small + 1 : 0;
    if (small >= 3) break;
  }
  return sum;
}

/// Cap on the j-series of a standalone local_factor call; the series exits
/// adaptively long before this except at the smallest primes.
inline constexpr int kLocalSeriesCap = 400;

/// Z_p(A, B) * int_0^1 A_{p,theta}(A, B) dtheta, using the closed form of the theta integral.
inline Complex local_factor(std::uint64_t p, const ShiftMultiset& a, const ShiftMultiset& b,
                            int cutoff = kLocalSeriesCap) {
  const double pd = static_cast<double>(p);
  Complex zp = 1.0;
  for (auto x : a)
    for (auto y : b) zp *= 1.0 - std::pow(pd, -(1.0 + x + y));
  return zp * local_series(p, a, b, cutoff);
}

/// int_0^1 prod_a (1 - e(-theta) p^{-1/2-a})^{-1} prod_b (1 - e(theta) p^{-1/2-b})^{-1} dtheta
/// by the periodic trapezoid rule.
inline Complex theta_integral(std::uint64_t p, const ShiftMultiset& a, const ShiftMultiset& b, int nodes = 128) {
  const double pd = static_cast<double>(p);
  Complex sum = 0;
  for (int k = 0; k < nodes; ++k) {
    const Complex e = std::polar(1.0, 2 * std::numbers::pi * k / nodes);
    Complex f = 1.0;
    for (auto x : a) f /= 1.0 - std::conj(e) * std::pow(pd, -(0.5 + x));
    for (auto y : b) f /= 1.0 - e * std::pow(pd, -(0.5 + y));
    sum += f;
  }
  return sum / static_cast<double>(nodes);
}

struct ArithmeticFactor {
  Complex value = 1.0;
  Complex tail_factor = 1.0;  // already included in value
  double error_estimate = 0;
};

/// True when every local factor is identically 1: with A = {a} the local
/// series is prod_b (1 - p^{-1-a-b})^{-1}, which Z_p cancels.
inline bool arithmetic_factor_is_trivial(const ShiftMultiset& a, const ShiftMultiset& b) {
  return a.size() <= 1 || b.size() <= 1;
}

/// prod_{p <= P} local_factor(p), times an optional tail exp(c E1(log P)) where
/// c is the mean of (local - 1) p^2 over primes in (P/10, P]; this models
/// sum_{p > P} c / p^2 ~ c int_P^inf du / (u^2 log u).
inline ArithmeticFactor arithmetic_factor(const ShiftMultiset& a, const ShiftMultiset& b,
                                          const EulerProductConfig& cfg = {}) {
  cfg.validate();
  if (arithmetic_factor_is_trivial(a, b)) return {};
  static thread_local std::uint64_t cached_bound = 0;
  static thread_local std::vector<std::uint32_t> primes;
  if (cached_bound != cfg.prime_cutoff) {
    primes = arith::primes_up_to(cfg.prime_cutoff);
    cached_bound = cfg.prime_cutoff;
  }

  const std::uint64_t decade = cfg.prime_cutoff / 10;
  struct Partial {
    Complex product = 1.0;
    Complex tail_sum = 0;
    std::size_t tail_count = 0;
  };
  // A fixed chunk count keeps the reduction order independent of the thread count.
  auto partials = ordered_chunks<Partial>(primes.size(), 64, [&](std::size_t lo, std::size_t hi) {
    Partial part;
    for (std::size_t i = lo; i < hi; ++i) {
      const Complex f = local_factor(primes[i], a, b, cfg.series_cutoff);
      part.product *= f;
      if (primes[i] > decade) {
        const double p = primes[i];
        part.tail_sum += (f - 1.0) * p * p;
        ++part.tail_count;
      }
    }
    return part;
  });

  ArithmeticFactor out;
  Complex tail_sum = 0;
  std::size_t tail_count = 0;
  for (const auto& part : partials) {
    out.value *= part.product;
    tail_sum += part.tail_sum;
    tail_count += part.tail_count;
  }
  if (tail_count > 0) {
    const Complex c = tail_sum / static_cast<double>(tail_count);
    const double e1 = -std::expint(-std::log(static_cast<double>(cfg.prime_cutoff)));
    const Complex log_tail = c * e1;
    out.error_estimate = std::abs(log_tail) * std::abs(out.value);
    if (cfg.tail == TailMode::integral) {
      out.tail_factor = std::exp(log_tail);
      out.value *= out.tail_factor;
      // The fit itself is the remaining uncertainty.
      out.error_estimate *= 0.1;
    }
  }
  return out;
}

/// B(A, B) = A(A, B) Z(A, B).
inline Complex b_pair(const ShiftMultiset& a, const ShiftMultiset& b, const EulerProductConfig& cfg = {}) {
  Complex z = z_pair(a, b);
  return arithmetic_factor(a, b, cfg).value * z;
}

}  // namespace moment_forge::recipe
