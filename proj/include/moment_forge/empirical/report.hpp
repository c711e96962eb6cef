#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "moment_forge/arith/shift_multiset.hpp"

namespace moment_forge::empirical {

inline nlohmann::json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

/// Empirical value against prediction, with the per-swap-class breakdown and
/// free-form truncation notes. A side that failed to compute is NaN and its
/// error is recorded in `errors`.
struct MomentReport {
  Complex empirical{std::numeric_limits<double>::quiet_NaN(), 0};
  Complex predicted{std::numeric_limits<double>::quiet_NaN(), 0};
  std::map<int, Complex> per_class;
  std::map<std::string, double> metrics;
  std::vector<std::string> diagnostics;
  std::vector<std::string> errors;

  bool complete() const { return errors.empty(); }

  /// |empirical - predicted| / |predicted|; NaN when either side is missing or predicted = 0.
  double relative_error() const {
    if (std::isnan(empirical.real()) || std::isnan(predicted.real()) || std::abs(predicted) == 0)
      return std::numeric_limits<double>::quiet_NaN();
    return std::abs(empirical - predicted) / std::abs(predicted);
  }

  /// Notes a conjugation-convention mismatch for the transform when conj(empirical)
  /// fits the prediction clearly better than the empirical value itself.
  void check_conjugation() {
    if (!complete() || std::abs(empirical.imag()) <= 1e-9 * std::abs(empirical)) return;
    const double direct = std::abs(empirical - predicted), flipped = std::abs(std::conj(empirical) - predicted);
    if (flipped < 0.5 * direct)
      diagnostics.push_back("conjugation mismatch: conj(empirical) matches the prediction better (" +
                            std::to_string(flipped) + " vs " + std::to_string(direct) +
                            "); the transform sign convention may be flipped");
  }

  nlohmann::json to_json() const {
    nlohmann::json classes = nlohmann::json::object();
    for (const auto& [k, v] : per_class) classes[std::to_string(k)] = complex_json(v);
    const double rel = relative_error();
    return {{"empirical", complex_json(empirical)},
            {"predicted", complex_json(predicted)},
            {"per_class", classes},
            {"relative_error", std::isnan(rel) ? nlohmann::json(nullptr) : nlohmann::json(rel)},
            {"metrics", metrics},
            {"diagnostics", diagnostics},
            {"errors", errors}};
  }
};

}  // namespace moment_forge::empirical
