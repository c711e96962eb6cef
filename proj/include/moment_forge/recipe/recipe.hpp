#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "moment_forge/arith/diagonal.hpp"
#include "moment_forge/arith/divisor_table.hpp"
#include "moment_forge/arith/window.hpp"
#include "moment_forge/recipe/euler_product.hpp"
#include "moment_forge/recipe/swaps.hpp"

namespace moment_forge::recipe {

/// One (U, V) term of a recipe evaluation.
struct SwapTerm {
  ShiftMultiset u, v;
  Complex value = 0;     // contribution to the total
  Complex exponent = 0;  // -sigma, the power of (tT / 2 pi)
  double remainder = 0;  // neglected-contour estimate (poly moment only)
  double quadrature_error = 0;
};

struct RecipeResult {
  Complex total = 0;
  std::vector<SwapTerm> terms;
  std::map<int, Complex> per_class;
  std::vector<std::string> notes;

  // Linear combinations of results over the same swap list (perturbation averaging).
  friend RecipeResult operator+(RecipeResult x, const RecipeResult& y) {
    x.total += y.total;
    for (const auto& [k, v] : y.per_class) x.per_class[k] += v;
    for (std::size_t i = 0; i < x.terms.size() && i < y.terms.size(); ++i) {
      x.terms[i].value += y.terms[i].value;
      x.terms[i].remainder += y.terms[i].remainder;
      x.terms[i].quadrature_error += y.terms[i].quadrature_error;
    }
    return x;
  }
  friend RecipeResult operator*(RecipeResult x, double c) {
    x.total *= c;
    for (auto& [k, v] : x.per_class) v *= c;
    for (auto& t : x.terms) {
      t.value *= c;
      t.remainder *= std::abs(c);
      t.quadrature_error *= std::abs(c);
    }
    return x;
  }

  double remainder() const {
    double r = 0;
    for (const auto& t : terms) r += t.remainder;
    return r;
  }
};

namespace detail {

inline void require_distinct(const ShiftMultiset& a, const ShiftMultiset& b) {
  if (a.has_repeats() || b.has_repeats())
    throw PoleError("confluent shifts: the recipe terms have higher-order poles; use the perturbation wrapper");
}

inline double two_pi() { return 2 * std::numbers::pi; }

}  // namespace detail

/// T int psi(t) sum_{U,V} (tT/2pi)^{-sigma} B(A - U + V^-, B - V + U^-) dt,
/// with the t-integral as the Mellin moment M(-sigma) = int psi(t) t^{-sigma} dt.
inline RecipeResult recipe_moment(const ShiftMultiset& a, const ShiftMultiset& b, double t_scale,
                                  const EulerProductConfig& cfg = {}) {
  detail::require_distinct(a, b);
  const auto& window = arith::Window::standard();
  RecipeResult out;
  for (const auto& swap : enumerate_swaps(a, b)) {
    const Complex sigma = swap.sigma();
    const Complex bb = b_pair(swap.swapped_a(), swap.swapped_b(), cfg);
    SwapTerm term{swap.u, swap.v, 0, -sigma};
    term.value = t_scale * std::pow(t_scale / detail::two_pi(), -sigma) * window.mellin(-sigma) * bb;
    out.total += term.value;
    out.per_class[static_cast<int>(swap.count())] += term.value;
    out.terms.push_back(std::move(term));
  }
  return out;
}

struct PolyMomentOptions {
  EulerProductConfig euler;
  int contour_nodes = 64;
  bool diagonal_only = false;
};

/// Evaluates (1/2 pi i) oint F(s) ds over |s| = r by the trapezoid rule; also
/// returns the half-resolution value for a convergence check. Poles inside at
/// radius d cost (d / r)^nodes.
template <class F>
std::pair<Complex, Complex> circle_integral(F&& f, double radius, int nodes) {
  Complex full = 0, half = 0;
  for (int k = 0; k < nodes; ++k) {
    const Complex s = std::polar(radius, detail::two_pi() * k / nodes);
    const Complex v = f(s) * s;
    full += v;
    if (k % 2 == 0) half += v;
  }
  return {full / static_cast<double>(nodes), half / static_cast<double>(nodes / 2)};
}

/// Recipe prediction for the mean square of the length-X Dirichlet polynomials.
///
/// Class 0 is T psi_hat(0) sum_{n <= X} tau_A tau_B / n. A class with k swaps
/// is kept iff T^k < X; each of its (U, V) terms is
///   T (T/2pi)^{-sigma} (1/2 pi i) int Y^s M(-sigma - k s) G(s) ds / s,
///   Y = X (2pi/T)^k,  G(s) = B((A-U) + {-b - s : b in V}, (B-V)_s + {-a : a in U}),
/// evaluated as the sum of residues at s = 0, -(a+b) (a in A-U, b in B-V) and
/// -(a+b) (a in U, b in V) by a circle enclosing all of them.
inline RecipeResult recipe_poly_moment(const ShiftMultiset& a, const ShiftMultiset& b, double t_scale, double x_len,
                                       const PolyMomentOptions& opt = {},
                                       const arith::DivisorTable* table_a = nullptr,
                                       const arith::DivisorTable* table_b = nullptr) {
  if (x_len <= 1) throw DomainError("X must exceed 1");
  detail::require_distinct(a, b);
  const auto& window = arith::Window::standard();
  const auto bound = static_cast<std::uint64_t>(std::floor(x_len));
  RecipeResult out;

  std::optional<arith::DivisorTable> own_a, own_b;
  if (!table_a || table_a->bound() < bound) table_a = &own_a.emplace(arith::DivisorTable::build(a, bound));
  if (!table_b || table_b->bound() < bound) table_b = &own_b.emplace(arith::DivisorTable::build(b, bound));

  SwapTerm diag{{}, {}, t_scale * window.transform(0) * arith::diagonal_series(*table_a, *table_b, bound), 0};
  out.total += diag.value;
  out.per_class[0] = diag.value;
  out.terms.push_back(diag);
  if (opt.diagonal_only) {
    out.notes.push_back("off-diagonal classes disabled");
    return out;
  }

  const std::size_t kmax = std::min(a.size(), b.size());
  for (std::size_t k = 1; k <= kmax; ++k) {
    const double kd = static_cast<double>(k);
    if (kd * std::log(t_scale) >= std::log(x_len)) {
      out.notes.push_back("class " + std::to_string(k) + " skipped: X <= T^" + std::to_string(k));
      continue;
    }
    out.per_class[static_cast<int>(k)] = 0;
  }

  for (const auto& swap : enumerate_swaps(a, b)) {
    const std::size_t k = swap.count();
    if (k == 0 || !out.per_class.count(static_cast<int>(k))) continue;
    const double kd = static_cast<double>(k);
    const Complex sigma = swap.sigma();
    const double log_y = std::log(x_len) + kd * std::log(detail::two_pi() / t_scale);

    double reach = 0;
    for (auto x : swap.a_rest)
      for (auto y : swap.b_rest) reach = std::max(reach, std::abs(x + y));
    for (auto x : swap.u)
      for (auto y : swap.v) reach = std::max(reach, std::abs(x + y));
    const double radius = std::max(0.05, 1.5 * reach);

    // With no (A-U) x (B-V) zeta factors and a trivial Euler product the
    // contour can be pushed to -infinity, so the residues are the whole integral.
    const bool exact = (swap.a_rest.empty() || swap.b_rest.empty()) &&
                       arithmetic_factor_is_trivial(swap.a_rest + swap.v, swap.b_rest + swap.u);
    auto g = [&](Complex s) {
      ShiftMultiset left = swap.a_rest + swap.v.negate().shifted(-s);
      ShiftMultiset right = swap.b_rest.shifted(s) + swap.u.negate();
      return b_pair(left, right, opt.euler);
    };
    auto integrand = [&](Complex s) {
      return std::exp(s * log_y) * window.mellin(-sigma - kd * s) * g(s) / s;
    };
    auto [integral, coarse] = circle_integral(integrand, radius, opt.contour_nodes);

    SwapTerm term{swap.u, swap.v, 0, -sigma};
    const Complex prefactor = t_scale * std::pow(t_scale / detail::two_pi(), -sigma);
    term.value = prefactor * integral;
    // The rule converges geometrically, so the N-node error is about the
    // square of the N/2-node error relative to the value.
    const double half_error = std::abs(integral - coarse);
    term.quadrature_error =
        std::abs(prefactor) * (std::abs(integral) > 0 ? std::min(half_error, half_error * half_error / std::abs(integral))
                                                      : half_error);
    if (!exact) {
      // Size of the integrand on Re s = -1/2, where the next singularities of B begin to matter.
      const Complex s = -0.5;
      term.remainder = std::abs(prefactor) * std::exp(-0.5 * log_y) * std::abs(window.mellin(-sigma - kd * s) * g(s)) /
                       0.5;
    }
    out.total += term.value;
    out.per_class[static_cast<int>(k)] += term.value;
    out.terms.push_back(std::move(term));
  }
  return out;
}

}  // namespace moment_forge::recipe
