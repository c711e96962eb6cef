#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "moment_forge/arith/table_cache.hpp"
#include "moment_forge/empirical/mean_square.hpp"
#include "moment_forge/empirical/report.hpp"
#include "moment_forge/recipe/recipe.hpp"

namespace moment_forge::empirical {

struct CompareOptions {
  recipe::PolyMomentOptions recipe;
  std::optional<arith::TableCache> cache;
  bool rebuild_tables = false;
};

/// Runs the pair sweep and the recipe prediction on shared divisor tables.
/// Either side may fail; the report then carries the other side and the error.
inline MomentReport compare_moment(const MomentSpec& spec, const CompareOptions& opt = {}) {
  spec.validate();
  MomentReport report;
  const auto bound = spec.bound();
  auto ta = arith::tau_table(spec.a, bound, opt.cache, opt.rebuild_tables);
  auto tb = arith::tau_table(spec.b, bound, opt.cache, opt.rebuild_tables);

  report.metrics["T"] = spec.t_scale;
  report.metrics["X"] = spec.x_len;
  report.metrics["X_exponent"] = std::log(spec.x_len) / std::log(spec.t_scale);
  report.metrics["cutoff_W"] = spec.cutoff_w();
  report.metrics["pair_budget"] = static_cast<double>(spec.pair_budget);

  try {
    auto ms = dirichlet_mean_square(spec, ta, tb);
    report.empirical = ms.value;
    report.metrics["pairs_visited"] = static_cast<double>(ms.pairs);
    report.metrics["empirical_wall_time"] = ms.wall_time;
  } catch (const Error& e) {
    report.errors.push_back(std::string("empirical: ") + e.what());
  }

  try {
    auto start = std::chrono::steady_clock::now();
    auto ropt = opt.recipe;
    ropt.diagonal_only = ropt.diagonal_only || spec.diagonal_only;
    auto pred = recipe::recipe_poly_moment(spec.a, spec.b, spec.t_scale, spec.x_len, ropt, &ta, &tb);
    report.predicted = pred.total;
    report.per_class = pred.per_class;
    report.metrics["recipe_remainder_estimate"] = pred.remainder();
    double quad = 0;
    for (const auto& t : pred.terms) quad += t.quadrature_error;
    report.metrics["recipe_contour_quadrature_error"] = quad;
    report.metrics["predicted_wall_time"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (auto& n : pred.notes) report.diagnostics.push_back(std::move(n));
  } catch (const Error& e) {
    report.errors.push_back(std::string("predicted: ") + e.what());
  }
  report.check_conjugation();
  return report;
}

/// One CSV row of a (T, X-exponent) sweep.
struct SweepRow {
  double t_scale = 0, x_exponent = 0;
  MomentReport report;
  double wall_time = 0;
};

inline std::vector<SweepRow> sweep(MomentSpec base, const std::vector<double>& t_values,
                                   const std::vector<double>& x_exponents, const CompareOptions& opt = {}) {
  std::vector<SweepRow> rows;
  for (double t : t_values)
    for (double e : x_exponents) {
      auto start = std::chrono::steady_clock::now();
      base.t_scale = t;
      base.x_len = std::pow(t, e);
      SweepRow row{t, e, compare_moment(base, opt), 0};
      row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      rows.push_back(std::move(row));
    }
  return rows;
}

inline std::string sweep_csv_header() {
  return "T,X_exponent,empirical_re,empirical_im,predicted_re,predicted_im,rel_err,pairs_visited,wall_time";
}

}  // namespace moment_forge::empirical
