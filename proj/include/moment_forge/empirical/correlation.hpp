#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "moment_forge/arith/divisor_table.hpp"
#include "moment_forge/arith/window.hpp"
#include "moment_forge/empirical/report.hpp"
#include "moment_forge/recipe/residues.hpp"

namespace moment_forge::empirical {

using arith::DivisorTable;
using arith::ShiftMultiset;

struct CorrelationSums {
  Complex cumulative = 0;        // sum_{m <= u} tau_A(m) tau_B(m + h)
  Complex windowed_average = 0;  // sum psi(m/u) tau_A(m) tau_B(m + h) / sum psi(m/u)
  double window_mass = 0;        // sum psi(m/u)
};

/// Table bound needed for correlation_sum(h, u): the window reaches m < 2u.
inline std::uint64_t correlation_bound(std::uint64_t h, double u) {
  return static_cast<std::uint64_t>(std::ceil(2 * u)) + h;
}

/// The average <.>_{m ~ u} weights u < m < 2u by psi(m/u).
inline CorrelationSums correlation_sum(const DivisorTable& ta, const DivisorTable& tb, std::uint64_t h, double u) {
  if (h == 0) throw DomainError("h must be positive");
  if (!(u >= 1)) throw DomainError("u must be at least 1");
  const auto need = correlation_bound(h, u);
  if (ta.bound() + h < need || tb.bound() < need)
    throw CapacityError("correlation at u = " + std::to_string(u) + " needs tables to " + std::to_string(need));
  CorrelationSums out;
  const auto top = static_cast<std::uint64_t>(std::floor(u));
  for (std::uint64_t m = 1; m <= top; ++m) out.cumulative += ta[m] * tb[m + h];
  Complex weighted = 0;
  for (std::uint64_t m = top + 1; static_cast<double>(m) < 2 * u; ++m) {
    const double w = arith::Window::eval(static_cast<double>(m) / u);
    if (w == 0) continue;
    weighted += w * ta[m] * tb[m + h];
    out.window_mass += w;
  }
  out.windowed_average = weighted / out.window_mass;
  return out;
}

/// The same psi(m/u) average of R*_{A,B}(m; h).
inline Complex windowed_prediction(const recipe::ResidueStar& star, double u) {
  Complex weighted = 0;
  double mass = 0;
  for (auto m = static_cast<std::uint64_t>(std::floor(u)) + 1; static_cast<double>(m) < 2 * u; ++m) {
    const double w = arith::Window::eval(static_cast<double>(m) / u);
    if (w == 0) continue;
    weighted += w * star(static_cast<double>(m));
    mass += w;
  }
  return weighted / mass;
}

/// Empirical psi-window average of tau_A(m) tau_B(m + h) near u against the
/// same average of R*_{A,B}(m; h), the conjectured local density.
inline MomentReport correlation_vs_prediction(const ShiftMultiset& a, const ShiftMultiset& b, std::uint64_t h,
                                              double u, std::uint64_t q_max = 10000,
                                              const DivisorTable* table_a = nullptr,
                                              const DivisorTable* table_b = nullptr) {
  if (h == 0) throw DomainError("h must be positive");
  MomentReport report;
  const auto need = correlation_bound(h, u);
  std::optional<DivisorTable> own_a, own_b;
  if (!table_a || table_a->bound() < need) table_a = &own_a.emplace(DivisorTable::build(a, need));
  if (!table_b || table_b->bound() < need) table_b = &own_b.emplace(DivisorTable::build(b, need));

  auto sums = correlation_sum(*table_a, *table_b, h, u);
  report.empirical = sums.windowed_average;
  auto star = recipe::residue_star_expansion(a, b, h, q_max);
  report.predicted = windowed_prediction(star, u);
  report.metrics["h"] = static_cast<double>(h);
  report.metrics["u"] = u;
  report.metrics["q_max"] = static_cast<double>(q_max);
  report.metrics["q_tail_at_u"] = star.tail(u);
  report.metrics["r_star_at_u_re"] = star(u).real();
  report.metrics["r_star_at_u_im"] = star(u).imag();
  report.metrics["cumulative_re"] = sums.cumulative.real();
  report.metrics["cumulative_im"] = sums.cumulative.imag();
  report.diagnostics.push_back("average over u < m < 2u weighted by psi(m/u); the window shape is a convention");
  report.check_conjugation();
  return report;
}

}  // namespace moment_forge::empirical
