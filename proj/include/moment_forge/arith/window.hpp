#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/trapezoidal.hpp>

#include "moment_forge/arith/shift_multiset.hpp"

namespace moment_forge::arith {

/// The bump psi(t) = exp(-1 / ((t - 1)(2 - t))) on (1, 2) and its transform
/// psi_hat(v) = int psi(t) e(t v) dt with e(x) = exp(2 pi i x).
///
/// psi_hat is tabulated on [0, cache_limit] with step 1e-3 and read back by
/// 6-point Lagrange interpolation; |v| beyond the table goes to adaptive
/// quadrature. Negative v uses psi_hat(-v) = conj(psi_hat(v)).
class Window {
 public:
  static constexpr double kStep = 1e-3;
  static constexpr double kCacheLimit = 64.0;
  static constexpr int kNodes = 1024;

  Window() { build_cache(); }

  /// Process-wide instance; the cache is built on first use.
  static const Window& standard() {
    static const Window w;
    return w;
  }

  static double eval(double t) {
    if (t <= 1.0 || t >= 2.0) return 0.0;
    return std::exp(-1.0 / ((t - 1.0) * (2.0 - t)));
  }

  Complex transform(double v) const {
    double a = std::abs(v);
    Complex value = a <= kCacheLimit ? interpolate(a) : direct_transform(a);
    return v < 0 ? std::conj(value) : value;
  }

  /// Adaptive trapezoidal quadrature; the integrand and all its derivatives
  /// vanish at both ends, so the rule converges spectrally.
  static Complex direct_transform(double v) {
    using boost::math::quadrature::trapezoidal;
    const double w = 2 * std::numbers::pi * v;
    int levels = 12;
    while ((std::size_t{1} << levels) < 8 * static_cast<std::size_t>(std::abs(v) + 1) && levels < 24) ++levels;
    auto re = trapezoidal([w](double t) { return eval(t) * std::cos(w * t); }, 1.0, 2.0, 1e-15, levels);
    auto im = trapezoidal([w](double t) { return eval(t) * std::sin(w * t); }, 1.0, 2.0, 1e-15, levels);
    return {re, im};
  }

  /// M(w) = int psi(t) t^w dt.
  Complex mellin(Complex w) const {
    Complex sum = 0;
    for (std::size_t k = 0; k < nodes_.size(); ++k) sum += weights_[k] * std::pow(nodes_[k], w);
    return sum;
  }

  /// Smallest W on the cache grid with |psi_hat(v)| < eps for every tabulated v > W.
  double cutoff(double eps) const {
    for (std::size_t i = cache_.size(); i-- > 0;)
      if (std::abs(cache_[i]) >= eps) return std::min(kCacheLimit, (static_cast<double>(i) + 1) * kStep);
    return 0.0;
  }

  double integral() const { return cache_[0].real(); }

 private:
  void build_cache() {
    // Interior trapezoid nodes on [1, 2]; the endpoint values are exactly zero.
    const double h = 1.0 / kNodes;
    for (int k = 1; k < kNodes; ++k) {
      double t = 1.0 + k * h;
      nodes_.push_back(t);
      weights_.push_back(h * eval(t));
    }
    const std::size_t n = static_cast<std::size_t>(kCacheLimit / kStep) + 4;
    cache_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = 2 * std::numbers::pi * (static_cast<double>(i) * kStep);
      // e(t v) stepped along the nodes, resynchronised every 64 nodes.
      const Complex step = std::polar(1.0, w * h);
      Complex sum = 0, phase;
      for (std::size_t k = 0; k < nodes_.size(); ++k) {
        if (k % 64 == 0) phase = std::polar(1.0, w * nodes_[k]);
        sum += weights_[k] * phase;
        phase *= step;
      }
      cache_[i] = sum;
    }
  }

  Complex interpolate(double v) const {
    const double x = v / kStep;
    const std::size_t i = static_cast<std::size_t>(x);
    // Six-point stencil i-2 .. i+3, shifted inward at the left end.
    const std::size_t lo = i < 2 ? 0 : i - 2;
    const double s = x - static_cast<double>(lo);
    double d[6];
    for (int b = 0; b < 6; ++b) d[b] = s - b;
    // Lagrange weights prod_{b != a} (s - b) / (a - b) via prefix/suffix products.
    double pre[7], suf[7];
    pre[0] = suf[6] = 1;
    for (int b = 0; b < 6; ++b) pre[b + 1] = pre[b] * d[b];
    for (int b = 5; b >= 0; --b) suf[b] = suf[b + 1] * d[b];
    static constexpr double inv_den[6] = {-1.0 / 120, 1.0 / 24, -1.0 / 12, 1.0 / 12, -1.0 / 24, 1.0 / 120};
    double re = 0, im = 0;
    for (int a = 0; a < 6; ++a) {
      const double w = pre[a] * suf[a + 1] * inv_den[a];
      re += w * cache_[lo + a].real();
      im += w * cache_[lo + a].imag();
    }
    return {re, im};
  }

  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<Complex> cache_;
};

inline double window_eval(double t) { return Window::eval(t); }
inline Complex window_transform(double v) { return Window::standard().transform(v); }

}  // namespace moment_forge::arith
