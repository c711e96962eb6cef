#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <new>
#include <span>
#include <string>
#include <vector>

#include "moment_forge/arith/number_theory.hpp"
#include "moment_forge/arith/shift_multiset.hpp"
#include "moment_forge/arith/symmetric.hpp"
#include "moment_forge/error.hpp"

namespace moment_forge::arith {

/// Largest table bound accepted by the sieve.
inline constexpr std::uint64_t kMaxTableBound = std::uint64_t{1} << 31;

namespace detail {

inline void check_bound(std::uint64_t bound) {
  if (bound == 0) throw CapacityError("divisor table bound must be at least 1");
  if (bound > kMaxTableBound)
    throw CapacityError("divisor table bound " + std::to_string(bound) + " exceeds " +
                        std::to_string(kMaxTableBound));
}

/// Prime-power structure of 1..bound: for each n its smallest prime p, the
/// exponent of p in n and the full p-part of n. Values of any multiplicative
/// function then follow from its prime-power values in one pass.
struct PrimePowerSieve {
  std::vector<std::uint32_t> spf;
  std::vector<std::uint32_t> ppart;
  std::vector<std::uint8_t> exponent;

  explicit PrimePowerSieve(std::uint64_t bound) try : spf(smallest_prime_factors(bound)),
                                                       ppart(bound + 1, 1),
                                                       exponent(bound + 1, 0) {
    for (std::uint64_t n = 2; n <= bound; ++n) {
      std::uint64_t p = spf[n], m = n / p;
      if (m % p == 0) {
        exponent[n] = static_cast<std::uint8_t>(exponent[m] + 1);
        ppart[n] = static_cast<std::uint32_t>(ppart[m] * p);
      } else {
        exponent[n] = 1;
        ppart[n] = static_cast<std::uint32_t>(p);
      }
    }
  } catch (const std::bad_alloc&) {
    throw CapacityError("out of memory sieving to " + std::to_string(bound));
  }

  /// out[n] = f(p, e) at prime powers and multiplicative elsewhere; out[1] = 1.
  template <class T, class PrimePowerValue>
  void assemble(std::vector<T>& out, PrimePowerValue&& f) const {
    out[1] = T(1);
    for (std::size_t n = 2; n < out.size(); ++n) {
      if (ppart[n] == n)
        out[n] = f(spf[n], exponent[n]);
      else
        out[n] = out[ppart[n]] * out[n / ppart[n]];
    }
  }
};

}  // namespace detail

/// tau_A(n) for 1 <= n <= X: the Dirichlet coefficients of prod_{a in A} zeta(s + a).
class DivisorTable {
 public:
  static DivisorTable build(const ShiftMultiset& shifts, std::uint64_t bound) {
    detail::check_bound(bound);
    DivisorTable t;
    t.shifts_ = shifts;
    try {
      t.values_.assign(bound + 1, Complex(0));
    } catch (const std::bad_alloc&) {
      throw CapacityError("out of memory allocating divisor table of size " + std::to_string(bound));
    }
    detail::PrimePowerSieve sieve(bound);
    std::vector<Complex> z(shifts.size());
    sieve.assemble(t.values_, [&](std::uint64_t p, int e) {
      for (std::size_t i = 0; i < z.size(); ++i) z[i] = std::pow(static_cast<double>(p), -shifts[i]);
      HomogeneousStream<Complex> h(z);
      Complex v = 0;
      for (int j = 0; j <= e; ++j) v = h.next();
      return v;
    });
    return t;
  }

  /// Wraps values read from a cache file; values[0] is ignored.
  static DivisorTable from_values(ShiftMultiset shifts, std::vector<Complex> values) {
    if (values.size() < 2) throw CapacityError("divisor table needs at least one value");
    DivisorTable t;
    t.shifts_ = std::move(shifts);
    t.values_ = std::move(values);
    t.values_[0] = 0;
    return t;
  }

  const ShiftMultiset& shifts() const { return shifts_; }
  std::uint64_t bound() const { return values_.size() - 1; }

  Complex operator[](std::uint64_t n) const { return values_[n]; }
  Complex at(std::uint64_t n) const {
    if (n == 0 || n > bound())
      throw CapacityError("index " + std::to_string(n) + " outside divisor table of bound " +
                          std::to_string(bound()));
    return values_[n];
  }

  /// Indexed 0..X with entry 0 unused.
  std::span<const Complex> values() const { return values_; }

 private:
  ShiftMultiset shifts_;
  std::vector<Complex> values_;
};

/// Exact d_k(n) for the all-zero multiset of size k.
class ExactDivisorTable {
 public:
  static ExactDivisorTable build(std::size_t k, std::uint64_t bound) {
    detail::check_bound(bound);
    ExactDivisorTable t;
    t.k_ = k;
    t.values_.assign(bound + 1, 0);
    detail::PrimePowerSieve sieve(bound);
    sieve.assemble(t.values_, [k](std::uint64_t, int e) {
      // d_k(p^e) = C(e + k - 1, k - 1)
      if (k == 0) return std::uint64_t{0};
      std::uint64_t c = 1;
      for (std::size_t i = 1; i < k; ++i) c = c * (e + i) / i;
      return c;
    });
    return t;
  }

  std::size_t k() const { return k_; }
  std::uint64_t bound() const { return values_.size() - 1; }
  std::uint64_t operator[](std::uint64_t n) const { return values_[n]; }

 private:
  std::size_t k_ = 0;
  std::vector<std::uint64_t> values_;
};

}  // namespace moment_forge::arith
