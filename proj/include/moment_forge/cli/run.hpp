#pragma once

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "moment_forge/arith/table_cache.hpp"
#include "moment_forge/cli/options.hpp"
#include "moment_forge/cli/selftest.hpp"
#include "moment_forge/empirical/compare.hpp"
#include "moment_forge/empirical/correlation.hpp"
#include "moment_forge/empirical/farey.hpp"
#include "moment_forge/error.hpp"
#include "moment_forge/formal/instances.hpp"
#include "moment_forge/recipe/perturb.hpp"
#include "moment_forge/recipe/recipe.hpp"
#include "moment_forge/recipe/residues.hpp"

namespace moment_forge::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUnequal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitComputation = 3;

namespace detail {

inline json shifts_json(const arith::ShiftMultiset& s) {
  json out = json::array();
  for (auto z : s) out.push_back(empirical::complex_json(z));
  return out;
}

inline json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

/// "a.b.c = value" lines, keys in sorted order.
inline void flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

inline std::string csv_number(double x) {
  if (!std::isfinite(x)) return "";
  return json(x).dump();
}

/// Flags shared by every subcommand.
struct Common {
  std::string out_path;
  std::string format;
  std::string config_path;
};

inline void add_common(CLI::App* app, Common& c) {
  app->add_option("--out", c.out_path, "write the report to this path instead of stdout");
  app->add_option("--format", c.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
  app->add_option("--config", c.config_path, "flat key = value file; command-line flags take precedence");
}

/// x values of a (T, X) grid: a fixed X when given, else T^e for each exponent.
struct GridPoint {
  double t, x, exponent;
};

inline std::vector<GridPoint> grid(const std::vector<std::string>& t_values, double x_fixed,
                                   const std::vector<std::string>& exponents) {
  std::vector<GridPoint> out;
  const auto ts = parse_doubles(t_values);
  if (ts.empty()) throw UsageError("--T needs at least one value");
  if (x_fixed > 0) {
    for (double t : ts) out.push_back({t, x_fixed, std::log(x_fixed) / std::log(t)});
    return out;
  }
  const auto es = parse_doubles(exponents);
  if (es.empty()) throw UsageError("give --X or --Xexp");
  for (double t : ts)
    for (double e : es) out.push_back({t, std::pow(t, e), e});
  return out;
}

inline json recipe_json(const recipe::RecipeResult& r) {
  json terms = json::array();
  for (const auto& t : r.terms)
    terms.push_back({{"U", shifts_json(t.u)},
                     {"V", shifts_json(t.v)},
                     {"swap_class", t.u.size()},
                     {"value", empirical::complex_json(t.value)},
                     {"exponent", empirical::complex_json(t.exponent)},
                     {"remainder_estimate", t.remainder},
                     {"quadrature_error", t.quadrature_error}});
  json classes = json::object();
  for (const auto& [k, v] : r.per_class) classes[std::to_string(k)] = empirical::complex_json(v);
  return {{"total", empirical::complex_json(r.total)},
          {"per_class", classes},
          {"terms", terms},
          {"remainder_estimate", r.remainder()},
          {"diagnostics", r.notes}};
}

}  // namespace detail

/// Parsed state of one invocation. Subcommand parameters live here so that
/// CLI11 and the config overlay write into the same variables.
using detail::Common;

class Runner {
 public:
  Runner() : app_("Shifted moments of Dirichlet polynomials: exact identities, predictions, sweeps", "moment_forge") {
    app_.require_subcommand(1);
    // --h is the correlation shift, so help is long-form only.
    app_.set_help_flag("--help", "print this help message and exit");
    app_.set_help_all_flag("--help-all", "show help for every subcommand");
    add_verify();
    add_predict();
    add_compute("compute", "empirical mean square of the Dirichlet polynomial only", compute_);
    add_compute("compare", "empirical mean square against the recipe prediction", compare_);
    add_correlate();
    add_farey();
    add_selftest();
  }

  int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
      app_.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) {
        app_.exit(e, out, err);
        return kExitOk;
      }
      const auto chosen = app_.get_subcommands();
      err << "usage error: " << e.what() << "\n" << (chosen.empty() ? app_.help() : chosen.front()->help());
      return kExitUsage;
    }
    for (auto& cmd : commands_) {
      if (!cmd.binder->app()->parsed()) continue;
      try {
        if (!cmd.common->config_path.empty()) cmd.binder->overlay(read_config(cmd.common->config_path));
        return cmd.execute(out);
      } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n" << cmd.binder->app()->help();
        return kExitUsage;
      } catch (const CLI::Error& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
      } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitComputation;
      } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitComputation;
      }
    }
    err << app_.help();
    return kExitUsage;
  }

 private:
  struct Command {
    std::unique_ptr<Binder> binder;
    Common* common;
    std::function<int(std::ostream&)> execute;
  };

  struct VerifyParams {
    Common common;
    std::string identity = "theorem2";
    std::vector<std::string> sizes{"1", "1", "1", "1"};
    int degree = 8;
    std::uint64_t seed = 1;
  };
  struct PredictParams {
    Common common;
    std::vector<std::string> a, b;
    double t = 1000, x = 0, xexp = 0;
    std::int64_t prime_cutoff = 100000;
    int series_cutoff = 40;
    std::string tail = "integral";
    int contour_nodes = 64;
    double eps = 1e-4;
    bool diagonal_only = false;
    std::int64_t h = 0;
    double u = 1e6;
    std::uint64_t q_max = 10000, m_mod = 1, n_mod = 1;
  };
  struct ComputeParams {
    Common common;
    std::vector<std::string> a, b;
    std::vector<std::string> t{"1000"};
    double x = 0;
    std::vector<std::string> xexp{"1.4"};
    double psi_eps = 1e-10, cutoff = 0;
    std::uint64_t budget = empirical::kDefaultPairBudget;
    bool diagonal_only = false, rebuild_tables = false;
    std::int64_t prime_cutoff = 100000;
    int series_cutoff = 40;
    std::string tail = "integral";
    int contour_nodes = 64;
  };
  struct CorrelateParams {
    Common common;
    std::vector<std::string> a, b;
    std::uint64_t h = 1;
    double u = 1e5;
    std::uint64_t q_max = 10000;
    bool rebuild_tables = false;
  };
  struct FareyParams {
    Common common;
    std::int64_t m1 = 0, m2 = 0, n1 = 0, n2 = 0, q = 10;
    std::uint64_t random = 0, seed = 1;
    std::int64_t max_value = 1000000;
  };
  struct SelftestParams {
    Common common;
    bool quick = false;
  };

  Binder& add_command(const std::string& name, const std::string& help, Common& common,
                      std::function<int(std::ostream&)> execute) {
    auto* sub = app_.add_subcommand(name, help);
    detail::add_common(sub, common);
    commands_.push_back({std::make_unique<Binder>(sub), &common, std::move(execute)});
    return *commands_.back().binder;
  }

  static void add_shift_flags(Binder& b, std::vector<std::string>& a, std::vector<std::string>& bb) {
    b.add("shiftA", a, "shift of A as a complex literal \"re+imi\"; repeat or comma-separate");
    b.add("shiftB", bb, "shift of B as a complex literal \"re+imi\"; repeat or comma-separate");
  }

  static void add_euler_flags(Binder& b, std::int64_t& p, int& j, std::string& tail, int& nodes) {
    b.add("P", p, "Euler product prime cutoff");
    b.add("J", j, "cap on the local j-series length");
    b.add("tail", tail, "Euler product tail correction: none | integral")
        ->check(CLI::IsMember({"none", "integral"}));
    b.add("contour-nodes", nodes, "nodes on each residue contour");
  }

  static recipe::PolyMomentOptions poly_options(std::int64_t p, int j, const std::string& tail, int nodes,
                                                bool diagonal_only) {
    recipe::PolyMomentOptions opt;
    if (p < 2) throw UsageError("--P must be at least 2");
    if (nodes < 8) throw UsageError("--contour-nodes must be at least 8");
    opt.euler.prime_cutoff = static_cast<std::uint64_t>(p);
    opt.euler.series_cutoff = j;
    opt.euler.tail = tail == "none" ? recipe::TailMode::none : recipe::TailMode::integral;
    opt.euler.validate();
    opt.contour_nodes = nodes;
    opt.diagonal_only = diagonal_only;
    return opt;
  }

  /// Wraps a result in the versioned envelope and writes it in the chosen format.
  int emit(const std::string& command, const Binder& binder, const Common& common, json result,
           std::ostream& out, const std::string& default_format, double wall_time,
           const std::string& csv_body = {}) const {
    const std::string format = common.format.empty() ? default_format : common.format;
    json doc{{"schema", 1}, {"command", command}, {"config", binder.effective()}, {"result", std::move(result)},
             {"wall_time", wall_time}};
    doc["config"]["format"] = format;
    std::ostringstream text;
    if (format == "json") {
      text << doc.dump(2) << "\n";
    } else if (format == "csv") {
      if (!csv_body.empty()) {
        text << csv_body;
      } else {
        text << "key,value\n";
        std::ostringstream flat;
        detail::flatten(doc, "", flat);
        std::istringstream lines(flat.str());
        for (std::string line; std::getline(lines, line);) {
          auto eq = line.find(" = ");
          std::string value = line.substr(eq + 3);
          if (value.find(',') != std::string::npos) value = "\"" + value + "\"";
          text << line.substr(0, eq) << "," << value << "\n";
        }
      }
    } else {
      detail::flatten(doc, "", text);
    }
    if (common.out_path.empty()) {
      out << text.str();
    } else {
      std::ofstream file(common.out_path, std::ios::trunc);
      if (!file) throw Error("cannot write " + common.out_path);
      file << text.str();
    }
    return kExitOk;
  }

  static double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  void add_verify() {
    auto& p = verify_;
    auto& b = add_command("verify", "exact check of a formal identity as truncated power series", p.common,
                          [this](std::ostream& out) { return run_verify(out); });
    b.add("identity", p.identity, "lemma1 | lemma1-random | semidiagonal | theorem2")
        ->check(CLI::IsMember({"lemma1", "lemma1-random", "semidiagonal", "theorem2"}));
    b.add("sizes", p.sizes, "four set sizes, e.g. 1,1,1,1");
    b.add("degree", p.degree, "truncation degree");
    b.add("seed", p.seed, "seed for lemma1-random");
  }

  int run_verify(std::ostream& out) {
    const auto& p = verify_;
    if (p.degree < 0) throw UsageError("--degree must be non-negative");
    std::vector<int> sizes;
    for (const auto& s : p.sizes) {
      const double v = parse_double(s);
      if (v != std::floor(v) || v < 0 || v > 8) throw UsageError("set sizes must be integers in 0..8");
      sizes.push_back(static_cast<int>(v));
    }
    formal::Certificate cert;
    if (p.identity == "lemma1") cert = formal::verify_lemma1(sizes, p.degree);
    else if (p.identity == "lemma1-random") cert = formal::verify_lemma1_random(p.seed, p.degree);
    else if (p.identity == "semidiagonal") cert = formal::verify_semidiagonal(sizes, p.degree);
    else cert = formal::verify_theorem2(sizes, p.degree);
    auto j = cert.to_json();
    j.erase("schema");
    const double wall = cert.wall_time;
    j.erase("wall_time");
    emit("verify", binder("verify"), p.common, j, out, "json", wall);
    return cert.equal ? kExitOk : kExitUnequal;
  }

  void add_predict() {
    auto& p = predict_;
    auto& b = add_command("predict", "recipe prediction for a shifted moment or a shifted correlation", p.common,
                          [this](std::ostream& out) { return run_predict(out); });
    add_shift_flags(b, p.a, p.b);
    b.add("T", p.t, "height T");
    b.add("X", p.x, "Dirichlet polynomial length; 0 means the full zeta moment");
    b.add("Xexp", p.xexp, "X = T^Xexp when --X is not given; 0 means the full zeta moment");
    add_euler_flags(b, p.prime_cutoff, p.series_cutoff, p.tail, p.contour_nodes);
    b.add("eps", p.eps, "perturbation used when the shifts make a pole; 0 disables");
    b.add_flag("diagonal-only", p.diagonal_only, "keep only the no-swap class");
    b.add("h", p.h, "shift h of the correlation tau_A(m) tau_B(m+h); 0 selects the moment prediction");
    b.add("u", p.u, "evaluation point of the correlation density");
    b.add("Qmax", p.q_max, "truncation of the q-series");
    b.add("M", p.m_mod, "modulus M of the delta average");
    b.add("N", p.n_mod, "modulus N of the delta average");
  }

  int run_predict(std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const auto& p = predict_;
    const auto a = parse_shifts(p.a), b = parse_shifts(p.b);
    json result{{"A", detail::shifts_json(a)}, {"B", detail::shifts_json(b)}};

    if (p.h != 0) {
      if (p.h < 0) throw UsageError("--h must be positive");
      if (!(p.u > 0)) throw UsageError("--u must be positive");
      auto star = recipe::residue_r_star(a, b, p.u, static_cast<std::uint64_t>(p.h), p.q_max);
      auto delta = recipe::delta_average(a, b, p.m_mod, p.n_mod, p.h, p.u, p.q_max);
      result["mode"] = "correlation";
      result["r_star"] = empirical::complex_json(star.value);
      result["r_star_q_tail"] = star.tail;
      result["delta_average"] = empirical::complex_json(delta.value);
      result["delta_average_q_tail"] = delta.tail;
      return emit("predict", binder("predict"), p.common, result, out, "json", seconds_since(start));
    }

    if (!(p.t >= 1)) throw UsageError("--T must be at least 1");
    const double x = p.x > 0 ? p.x : (p.xexp > 0 ? std::pow(p.t, p.xexp) : 0.0);
    auto opt = poly_options(p.prime_cutoff, p.series_cutoff, p.tail, p.contour_nodes, p.diagonal_only);
    auto compute = [&](const arith::ShiftMultiset& sa, const arith::ShiftMultiset& sb) {
      return x > 0 ? recipe::recipe_poly_moment(sa, sb, p.t, x, opt) : recipe::recipe_moment(sa, sb, p.t, opt.euler);
    };
    recipe::RecipeResult r;
    bool perturbed = false;
    try {
      r = compute(a, b);
    } catch (const PoleError& e) {
      if (!(p.eps > 0)) throw;
      r = recipe::perturbed_average(a, b, p.eps, compute);
      r.notes.push_back(std::string("pole at the given shifts (") + e.what() + "); averaged over +-eps perturbations");
      perturbed = true;
    }
    result["mode"] = x > 0 ? "polynomial_moment" : "zeta_moment";
    result["X"] = x > 0 ? json(x) : json(nullptr);
    result["perturbed"] = perturbed;
    result["prediction"] = detail::recipe_json(r);
    return emit("predict", binder("predict"), p.common, result, out, "json", seconds_since(start));
  }

  void add_compute(const std::string& name, const std::string& help, ComputeParams& p) {
    const bool with_prediction = name == "compare";
    auto& b = add_command(name, help, p.common, [this, name, with_prediction, &p](std::ostream& out) {
      return run_compute(name, p, with_prediction, out);
    });
    add_shift_flags(b, p.a, p.b);
    b.add("T", p.t, "height T; several values make a sweep");
    b.add("X", p.x, "fixed polynomial length; overrides --Xexp");
    b.add("Xexp", p.xexp, "X = T^Xexp; several values make a sweep");
    b.add("psi-eps", p.psi_eps, "window transform cutoff: pairs with |psi_hat| below this are dropped");
    b.add("W", p.cutoff, "explicit transform cutoff W; 0 derives W from --psi-eps");
    b.add("budget", p.budget, "maximum number of (m, n) pairs");
    b.add_flag("diagonal-only", p.diagonal_only, "restrict to m = n on both sides");
    b.add_flag("rebuild-tables", p.rebuild_tables, "ignore cached divisor tables");
    if (with_prediction) add_euler_flags(b, p.prime_cutoff, p.series_cutoff, p.tail, p.contour_nodes);
  }

  int run_compute(const std::string& name, const ComputeParams& p, bool with_prediction, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const auto a = parse_shifts(p.a), b = parse_shifts(p.b);
    const auto points = detail::grid(p.t, p.x, p.xexp);
    empirical::CompareOptions opt;
    if (with_prediction) opt.recipe = poly_options(p.prime_cutoff, p.series_cutoff, p.tail, p.contour_nodes, false);
    opt.cache = arith::TableCache::from_env();
    opt.rebuild_tables = p.rebuild_tables;

    std::vector<empirical::MomentReport> reports;
    for (const auto& pt : points) {
      empirical::MomentSpec spec;
      spec.a = a;
      spec.b = b;
      spec.t_scale = pt.t;
      spec.x_len = pt.x;
      spec.psi_eps = p.psi_eps;
      if (p.cutoff > 0) spec.cutoff = p.cutoff;
      spec.pair_budget = p.budget;
      spec.diagonal_only = p.diagonal_only;
      if (with_prediction) {
        reports.push_back(empirical::compare_moment(spec, opt));
        continue;
      }
      spec.validate();
      empirical::MomentReport r;
      auto ta = arith::tau_table(a, spec.bound(), opt.cache, opt.rebuild_tables);
      auto tb = arith::tau_table(b, spec.bound(), opt.cache, opt.rebuild_tables);
      r.metrics["T"] = pt.t;
      r.metrics["X"] = pt.x;
      r.metrics["X_exponent"] = pt.exponent;
      r.metrics["cutoff_W"] = spec.cutoff_w();
      r.metrics["pair_budget"] = static_cast<double>(spec.pair_budget);
      try {
        auto ms = empirical::dirichlet_mean_square(spec, ta, tb);
        r.empirical = ms.value;
        r.metrics["pairs_visited"] = static_cast<double>(ms.pairs);
        r.metrics["empirical_wall_time"] = ms.wall_time;
      } catch (const Error& e) {
        r.errors.push_back(std::string("empirical: ") + e.what());
      }
      reports.push_back(std::move(r));
    }

    bool complete = true;
    std::ostringstream csv;
    csv << empirical::sweep_csv_header() << "\n";
    json rows = json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      complete = complete && r.complete();
      auto metric = [&r](const char* key) {
        auto it = r.metrics.find(key);
        return it == r.metrics.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
      };
      const double wall = metric("empirical_wall_time") + (with_prediction ? metric("predicted_wall_time") : 0.0);
      csv << detail::csv_number(points[i].t) << "," << detail::csv_number(points[i].exponent) << ","
          << detail::csv_number(r.empirical.real()) << "," << detail::csv_number(r.empirical.imag()) << ","
          << detail::csv_number(r.predicted.real()) << "," << detail::csv_number(r.predicted.imag()) << ","
          << detail::csv_number(r.relative_error()) << "," << detail::csv_number(metric("pairs_visited")) << ","
          << detail::csv_number(wall) << "\n";
      auto j = r.to_json();
      if (!with_prediction) {
        j.erase("predicted");
        j.erase("per_class");
        j.erase("relative_error");
      }
      rows.push_back(std::move(j));
    }
    json result = rows.size() == 1 ? rows[0] : json{{"rows", rows}};
    result["A"] = detail::shifts_json(a);
    result["B"] = detail::shifts_json(b);
    emit(name, binder(name), p.common, result, out, "json", seconds_since(start), csv.str());
    return complete ? kExitOk : kExitComputation;
  }

  void add_correlate() {
    auto& p = correlate_;
    auto& b = add_command("correlate", "windowed shifted correlation of tau_A and tau_B against its prediction",
                          p.common, [this](std::ostream& out) { return run_correlate(out); });
    add_shift_flags(b, p.a, p.b);
    b.add("h", p.h, "shift h >= 1");
    b.add("u", p.u, "window position: average over u < m < 2u");
    b.add("Qmax", p.q_max, "truncation of the q-series");
    b.add_flag("rebuild-tables", p.rebuild_tables, "ignore cached divisor tables");
  }

  int run_correlate(std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const auto& p = correlate_;
    if (p.h < 1) throw UsageError("--h must be at least 1");
    if (!(p.u >= 1)) throw UsageError("--u must be at least 1");
    const auto a = parse_shifts(p.a), b = parse_shifts(p.b);
    const auto cache = arith::TableCache::from_env();
    const auto need = empirical::correlation_bound(p.h, p.u);
    auto ta = arith::tau_table(a, need, cache, p.rebuild_tables);
    auto tb = arith::tau_table(b, need, cache, p.rebuild_tables);
    auto report = empirical::correlation_vs_prediction(a, b, p.h, p.u, p.q_max, &ta, &tb);
    auto result = report.to_json();
    result["A"] = detail::shifts_json(a);
    result["B"] = detail::shifts_json(b);
    return emit("correlate", binder("correlate"), p.common, result, out, "json", seconds_since(start));
  }

  void add_farey() {
    auto& p = farey_;
    auto& b = add_command("farey", "Farey frame of a Type-II tuple and its algebraic identity", p.common,
                          [this](std::ostream& out) { return run_farey(out); });
    b.add("m1", p.m1, "m1 >= 1");
    b.add("m2", p.m2, "m2 >= 1");
    b.add("n1", p.n1, "n1 >= 1");
    b.add("n2", p.n2, "n2 >= 1");
    b.add("Q", p.q, "Farey order");
    b.add("random", p.random, "check this many random tuples instead of one");
    b.add("seed", p.seed, "seed for --random");
    b.add("max", p.max_value, "upper bound of random entries");
  }

  int run_farey(std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const auto& p = farey_;
    auto frame_json = [](const empirical::FareyFrame& f) {
      return json{{"M", f.m}, {"N", f.n}, {"Q", f.q}, {"h1", f.h1}, {"h2", f.h2}};
    };
    json result;
    bool ok = true;
    if (p.random > 0) {
      if (p.max_value < 1) throw UsageError("--max must be at least 1");
      std::mt19937_64 rng(p.seed);
      std::uniform_int_distribution<std::int64_t> entry(1, p.max_value);
      std::uint64_t failures = 0;
      json first_failure = nullptr;
      for (std::uint64_t i = 0; i < p.random; ++i) {
        const std::int64_t m1 = entry(rng), m2 = entry(rng), n1 = entry(rng), n2 = entry(rng);
        auto f = empirical::farey_decompose(m1, m2, n1, n2, p.q);
        if (!empirical::farey_identity_holds(m1, m2, n1, n2, f)) {
          if (failures++ == 0) first_failure = {{"m1", m1}, {"m2", m2}, {"n1", n1}, {"n2", n2}, {"frame", frame_json(f)}};
        }
      }
      ok = failures == 0;
      result = {{"tuples", p.random}, {"failures", failures}, {"first_failure", first_failure}, {"identity_holds", ok}};
    } else {
      if (p.m1 < 1 || p.m2 < 1 || p.n1 < 1 || p.n2 < 1) throw UsageError("give --m1 --m2 --n1 --n2 (all >= 1) or --random");
      auto f = empirical::farey_decompose(p.m1, p.m2, p.n1, p.n2, p.q);
      ok = empirical::farey_identity_holds(p.m1, p.m2, p.n1, p.n2, f);
      result = {{"frame", frame_json(f)}, {"identity_holds", ok}};
    }
    emit("farey", binder("farey"), p.common, result, out, "json", seconds_since(start));
    return ok ? kExitOk : kExitUnequal;
  }

  void add_selftest() {
    auto& p = selftest_;
    auto& b = add_command("selftest", "reduced invariant suite (PASS/FAIL per check)", p.common,
                          [this](std::ostream& out) { return run_selftest(out); });
    b.add_flag("quick", p.quick, "skip the slower numeric checks");
  }

  int run_selftest(std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const auto& p = selftest_;
    const std::string format = p.common.format.empty() ? "text" : p.common.format;
    auto results = run_selftest_suite(p.quick, format == "text" && p.common.out_path.empty() ? &out : nullptr);
    bool ok = true;
    json checks = json::array();
    for (const auto& r : results) {
      ok = ok && r.pass;
      checks.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    if (format == "text" && p.common.out_path.empty()) {
      out << (ok ? "selftest: all checks passed" : "selftest: FAILED") << "\n";
    } else {
      emit("selftest", binder("selftest"), p.common, {{"checks", checks}, {"passed", ok}}, out, "text",
           seconds_since(start));
    }
    return ok ? kExitOk : kExitUnequal;
  }

  const Binder& binder(const std::string& name) const {
    for (const auto& c : commands_)
      if (c.binder->app()->get_name() == name) return *c.binder;
    throw Error("no subcommand " + name);
  }

  CLI::App app_;
  std::vector<Command> commands_;
  VerifyParams verify_;
  PredictParams predict_;
  ComputeParams compute_, compare_;
  CorrelateParams correlate_;
  FareyParams farey_;
  SelftestParams selftest_;
};

/// Entry point: parses argv, runs one subcommand and returns the exit code
/// (0 ok, 1 identity or check failed, 2 usage error, 3 computation error).
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Runner runner;
  return runner.run(argc, argv, out, err);
}

}  // namespace moment_forge::cli
