#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "moment_forge/arith/divisor_table.hpp"
#include "moment_forge/arith/window.hpp"
#include "moment_forge/error.hpp"
#include "moment_forge/parallel.hpp"

namespace moment_forge::empirical {

using arith::DivisorTable;
using arith::ShiftMultiset;

inline constexpr std::uint64_t kDefaultPairBudget = 200'000'000;

struct MomentSpec {
  ShiftMultiset a, b;
  double t_scale = 1000;
  double x_len = 1000;
  double psi_eps = 1e-10;            // |psi_hat(v)| < psi_eps for |v| > W
  std::optional<double> cutoff;      // explicit W, overriding psi_eps
  std::uint64_t pair_budget = kDefaultPairBudget;
  bool diagonal_only = false;

  void validate() const {
    if (!(t_scale >= 100)) throw DomainError("T must be at least 100");
    if (!(x_len >= 2)) throw DomainError("X must be at least 2");
    if (cutoff && !(*cutoff > 0)) throw DomainError("cutoff W must be positive");
  }
  std::uint64_t bound() const { return static_cast<std::uint64_t>(std::floor(x_len)); }
  double cutoff_w() const { return cutoff ? *cutoff : arith::Window::standard().cutoff(psi_eps); }
};

struct MeanSquare {
  Complex value = 0;
  std::uint64_t pairs = 0;
  double cutoff_w = 0;
  double wall_time = 0;
};

namespace detail {

/// n-range [lo, hi] of the pairs (m, n) with (T/2pi)|log m - log n| <= W.
struct PairWindow {
  const std::vector<double>& logs;
  double scale;  // T / 2 pi
  double w;
  std::uint64_t bound;

  bool inside(std::uint64_t m, std::uint64_t n) const { return scale * std::abs(logs[m] - logs[n]) <= w; }

  std::pair<std::uint64_t, std::uint64_t> range(std::uint64_t m) const {
    const double delta = w / scale;
    auto lo = static_cast<std::uint64_t>(std::max(1.0, std::floor(static_cast<double>(m) * std::exp(-delta))));
    auto hi = static_cast<std::uint64_t>(
        std::min(static_cast<double>(bound), std::ceil(static_cast<double>(m) * std::exp(delta))));
    while (lo < m && !inside(m, lo)) ++lo;
    while (lo > 1 && inside(m, lo - 1)) --lo;
    while (hi > m && !inside(m, hi)) --hi;
    while (hi < bound && inside(m, hi + 1)) ++hi;
    return {lo, hi};
  }
};

inline std::vector<double> log_table(std::uint64_t bound) {
  std::vector<double> logs(bound + 2, 0.0);
  for (std::uint64_t n = 1; n < logs.size(); ++n) logs[n] = std::log(static_cast<double>(n));
  return logs;
}

}  // namespace detail

/// Number of pairs the sweep would visit.
inline std::uint64_t count_pairs(const MomentSpec& spec) {
  spec.validate();
  const auto bound = spec.bound();
  if (spec.diagonal_only) return bound;
  auto logs = detail::log_table(bound);
  detail::PairWindow win{logs, spec.t_scale / (2 * std::numbers::pi), spec.cutoff_w(), bound};
  std::uint64_t total = 0;
  for (std::uint64_t m = 1; m <= bound; ++m) {
    auto [lo, hi] = win.range(m);
    total += hi - lo + 1;
  }
  return total;
}

/// T sum_{m,n <= X} tau_A(m) tau_B(n) psi_hat((T/2pi) log(m/n)) / sqrt(mn), restricted to
/// pairs with |(T/2pi) log(m/n)| <= W. Throws BudgetError before sweeping when the pair
/// count exceeds the budget.
inline MeanSquare dirichlet_mean_square(const MomentSpec& spec, const DivisorTable& ta, const DivisorTable& tb) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto bound = spec.bound();
  if (ta.bound() < bound || tb.bound() < bound) throw CapacityError("divisor tables shorter than X");
  const auto& window = arith::Window::standard();
  MeanSquare out;
  out.cutoff_w = spec.cutoff_w();

  auto logs = detail::log_table(bound);
  std::vector<Complex> wa(bound + 1), wb(bound + 1);
  for (std::uint64_t n = 1; n <= bound; ++n) {
    const double root = std::sqrt(static_cast<double>(n));
    wa[n] = ta[n] / root;
    wb[n] = tb[n] / root;
  }

  std::vector<Complex> partial;
  if (spec.diagonal_only) {
    // Same weights and reduction order as the full sweep, restricted to m = n.
    out.pairs = bound;
    const Complex centre = window.transform(0);
    partial = ordered_chunks<Complex>(bound, 256, [&](std::size_t lo_m, std::size_t hi_m) {
      Complex acc = 0;
      for (std::uint64_t m = lo_m + 1; m <= hi_m; ++m) acc += wa[m] * wb[m] * centre;
      return acc;
    });
  } else {
    out.pairs = count_pairs(spec);
    if (out.pairs > spec.pair_budget)
      throw BudgetError("pair sweep needs " + std::to_string(out.pairs) + " pairs, budget is " +
                        std::to_string(spec.pair_budget) + "; lower X or raise T (or the budget)");
    const double scale = spec.t_scale / (2 * std::numbers::pi);
    detail::PairWindow win{logs, scale, out.cutoff_w, bound};
    partial = ordered_chunks<Complex>(bound, 256, [&](std::size_t lo_m, std::size_t hi_m) {
      Complex acc = 0;
      for (std::uint64_t m = lo_m + 1; m <= hi_m; ++m) {
        if (wa[m] == 0.0) continue;
        auto [lo, hi] = win.range(m);
        Complex row = 0;
        for (std::uint64_t n = lo; n <= hi; ++n) row += wb[n] * window.transform(scale * (logs[m] - logs[n]));
        acc += wa[m] * row;
      }
      return acc;
    });
  }
  Complex sum = 0;
  for (auto p : partial) sum += p;
  out.value = spec.t_scale * sum;
  out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

/// The same truncated sum by a plain double loop over all m, n <= X. O(X^2);
/// reference for the sweep at small X.
inline Complex naive_mean_square(const MomentSpec& spec, const DivisorTable& ta, const DivisorTable& tb) {
  spec.validate();
  const auto bound = spec.bound();
  if (ta.bound() < bound || tb.bound() < bound) throw CapacityError("divisor tables shorter than X");
  const auto& window = arith::Window::standard();
  const double scale = spec.t_scale / (2 * std::numbers::pi), w = spec.cutoff_w();
  Complex sum = 0;
  for (std::uint64_t m = 1; m <= bound; ++m)
    for (std::uint64_t n = 1; n <= bound; ++n) {
      if (spec.diagonal_only && m != n) continue;
      const double v = scale * std::log(static_cast<double>(m) / static_cast<double>(n));
      if (std::abs(v) > w) continue;
      sum += ta[m] * tb[n] * window.transform(v) / std::sqrt(static_cast<double>(m) * static_cast<double>(n));
    }
  return spec.t_scale * sum;
}

}  // namespace moment_forge::empirical
