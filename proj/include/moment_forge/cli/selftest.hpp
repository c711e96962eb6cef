#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "moment_forge/arith/divisor_table.hpp"
#include "moment_forge/empirical/automorphism.hpp"
#include "moment_forge/empirical/compare.hpp"
#include "moment_forge/empirical/correlation.hpp"
#include "moment_forge/empirical/farey.hpp"
#include "moment_forge/empirical/mean_square.hpp"
#include "moment_forge/formal/instances.hpp"
#include "moment_forge/recipe/euler_product.hpp"
#include "moment_forge/recipe/recipe.hpp"
#include "moment_forge/recipe/swaps.hpp"

namespace moment_forge::cli {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline std::string sci(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << x;
  return s.str();
}

inline CheckResult formal_checks(int degree) {
  int cases = 0, failed = 0;
  auto tally = [&](const formal::Certificate& c) {
    ++cases;
    if (!c.equal) ++failed;
  };
  tally(formal::verify_lemma1({1, 1, 1, 1}, degree));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) tally(formal::verify_lemma1_random(seed, degree));
  for (int a1 = 1; a1 <= 2; ++a1)
    for (int b1 = 1; b1 <= 2; ++b1)
      for (int a2 = 0; a2 <= 1; ++a2)
        for (int b2 = 0; b2 <= 1; ++b2) tally(formal::verify_semidiagonal({a1, b1, a2, b2}, degree));
  tally(formal::verify_theorem2({1, 1, 1, 1}, degree));
  tally(formal::verify_theorem2({2, 1, 1, 1}, degree));
  return {"formal identities", failed == 0,
          std::to_string(cases - failed) + "/" + std::to_string(cases) + " equal at degree " + std::to_string(degree)};
}

inline CheckResult euler_checks(std::uint64_t prime_cutoff) {
  recipe::EulerProductConfig cfg;
  cfg.prime_cutoff = prime_cutoff;
  const auto af = recipe::arithmetic_factor({0.0, 0.0}, {0.0, 0.0}, cfg);
  const double err = std::abs(af.value - 6 / (std::numbers::pi * std::numbers::pi));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> shift(-0.2, 0.2);
  const auto primes = arith::primes_up_to(2000);
  double singleton = 0;
  for (auto p : primes) {
    const arith::ShiftMultiset a{Complex(shift(rng), shift(rng))}, b{shift(rng), shift(rng), shift(rng)};
    singleton = std::max(singleton, std::abs(recipe::local_factor(p, a, b) - 1.0));
  }
  return {"euler product", err <= 1e-5 && singleton <= 1e-12,
          "|A({0,0},{0,0}) - 6/pi^2| = " + sci(err) + ", singleton max dev " + sci(singleton)};
}

inline CheckResult theta_checks() {
  const std::vector<arith::ShiftMultiset> sets{{0.1}, {0.05, -0.03}, {Complex(0.02, 0.1), 0.07}};
  double worst = 0;
  for (std::uint64_t p : {2u, 3u, 5u})
    for (const auto& a : sets)
      for (const auto& b : sets)
        worst = std::max(worst, std::abs(recipe::theta_integral(p, a, b) - recipe::local_series(p, a, b, 200)));
  return {"theta integral", worst <= 1e-10, "max |quadrature - series| = " + sci(worst)};
}

inline CheckResult sweep_checks() {
  empirical::MomentSpec spec;
  spec.a = {0.01, Complex(0.02, 0.05)};
  spec.b = {0.03};
  spec.t_scale = 200;
  spec.x_len = 300;
  const auto ta = arith::DivisorTable::build(spec.a, 300), tb = arith::DivisorTable::build(spec.b, 300);
  const auto fast = empirical::dirichlet_mean_square(spec, ta, tb).value;
  const auto slow = empirical::naive_mean_square(spec, ta, tb);
  const double err = std::abs(fast - slow) / std::abs(slow);
  spec.diagonal_only = true;
  const auto diag = empirical::dirichlet_mean_square(spec, ta, tb).value;
  recipe::PolyMomentOptions opt;
  opt.diagonal_only = true;
  const auto pred = recipe::recipe_poly_moment(spec.a, spec.b, spec.t_scale, spec.x_len, opt, &ta, &tb).total;
  const double derr = std::abs(diag - pred) / std::abs(pred);
  return {"pair sweep", err <= 1e-10 && derr <= 1e-10,
          "sweep vs naive " + sci(err) + ", diagonal vs class 0 " + sci(derr)};
}

inline CheckResult moment_check() {
  empirical::MomentSpec spec;
  spec.a = {0.01};
  spec.b = {0.02};
  spec.t_scale = 1000;
  spec.x_len = std::pow(1000.0, 1.4);
  const auto report = empirical::compare_moment(spec);
  const double rel = report.relative_error();
  return {"moment consistency", report.complete() && rel <= 0.05, "T=1000, X=T^1.4: relative error " + sci(rel)};
}

inline CheckResult correlation_check() {
  const auto report = empirical::correlation_vs_prediction({0.05}, {0.07}, 1, 2e4, 2000);
  const double rel = report.relative_error();
  return {"correlation", rel <= 0.1, "h=1, u=2e4: relative error " + sci(rel)};
}

inline CheckResult structural_checks() {
  bool ok = true;
  std::string detail;
  for (int k = 0; k <= 6; ++k)
    for (int l = 0; k + l <= 6; ++l)
      if (empirical::automorphism_count(k, l) != (std::uint64_t{1} << (k + l))) {
        ok = false;
        detail += "automorphism(" + std::to_string(k) + "," + std::to_string(l) + ") ";
      }
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> entry(1, 1'000'000), order(1, 5000);
  int farey_fail = 0;
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t m1 = entry(rng), m2 = entry(rng), n1 = entry(rng), n2 = entry(rng);
    if (!empirical::farey_identity_holds(m1, m2, n1, n2, empirical::farey_decompose(m1, m2, n1, n2, order(rng))))
      ++farey_fail;
  }
  if (farey_fail) {
    ok = false;
    detail += std::to_string(farey_fail) + " Farey failures ";
  }
  for (int na = 0; na <= 3; ++na)
    for (int nb = 0; nb <= 3; ++nb) {
      std::vector<Complex> a, b;
      for (int i = 0; i < na; ++i) a.push_back(0.01 * (i + 1));
      for (int j = 0; j < nb; ++j) b.push_back(0.1 + 0.01 * j);
      std::size_t expected = 0;
      auto choose = [](int n, int k) {
        std::size_t c = 1;
        for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
        return c;
      };
      for (int j = 0; j <= std::min(na, nb); ++j) expected += choose(na, j) * choose(nb, j);
      if (recipe::enumerate_swaps(arith::ShiftMultiset(a), arith::ShiftMultiset(b)).size() != expected) {
        ok = false;
        detail += "swaps(" + std::to_string(na) + "," + std::to_string(nb) + ") ";
      }
    }
  return {"structural", ok, ok ? "automorphism counts, Farey identity, swap counts" : detail};
}

}  // namespace detail

/// Runs the reduced invariant suite; with `progress` set, prints one
/// PASS/FAIL line per check as it finishes.
inline std::vector<CheckResult> run_selftest_suite(bool quick, std::ostream* progress) {
  std::vector<std::function<CheckResult()>> checks{
      [quick] { return detail::formal_checks(quick ? 4 : 6); },
      [quick] { return detail::euler_checks(quick ? 10000 : 100000); },
      detail::theta_checks,
      detail::sweep_checks,
      detail::structural_checks,
  };
  if (!quick) {
    checks.push_back(detail::moment_check);
    checks.push_back(detail::correlation_check);
  }
  std::vector<CheckResult> out;
  for (auto& check : checks) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r = {"exception", false, e.what()};
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (progress) *progress << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << " (" << detail::sci(wall) << " s)\n";
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace moment_forge::cli
