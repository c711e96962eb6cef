#pragma once

#include <optional>
#include <vector>

#include "moment_forge/formal/laurent.hpp"

namespace moment_forge::formal {

/// Power series in X truncated after X^N, with Laurent-polynomial coefficients.
class FormalSeries {
 public:
  explicit FormalSeries(int degree = 0) : coeffs_(static_cast<std::size_t>(check(degree)) + 1) {}

  static FormalSeries one(int degree) { return constant(degree, 1); }
  static FormalSeries constant(int degree, const LaurentPoly& c) {
    FormalSeries s(degree);
    s.coeffs_[0] = c;
    return s;
  }
  /// c * y^x * X^k, or zero when k > N.
  static FormalSeries monomial(int degree, int k, const Exponent& x, const Rational& c = 1) {
    FormalSeries s(degree);
    if (k >= 0 && k <= degree) s.coeffs_[k] = LaurentPoly::monomial(x, c);
    return s;
  }
  /// 1 - y^x X^k.
  static FormalSeries one_minus(int degree, int k, const Exponent& x) {
    return one(degree) - monomial(degree, k, x);
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const LaurentPoly& operator[](int k) const { return coeffs_[k]; }
  LaurentPoly& operator[](int k) { return coeffs_[k]; }

  FormalSeries& operator+=(const FormalSeries& o) {
    same_degree(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  FormalSeries& operator-=(const FormalSeries& o) {
    same_degree(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  friend FormalSeries operator+(FormalSeries a, const FormalSeries& b) { return a += b; }
  friend FormalSeries operator-(FormalSeries a, const FormalSeries& b) { return a -= b; }

  friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
    a.same_degree(b);
    FormalSeries r(a.degree());
    for (int i = 0; i <= a.degree(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (int j = 0; i + j <= a.degree(); ++j)
        if (!b.coeffs_[j].is_zero()) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return r;
  }
  FormalSeries& operator*=(const FormalSeries& o) { return *this = *this * o; }

  /// Multiplies by c * y^x * X^k, dropping what falls past the truncation.
  FormalSeries shifted(int k, const Exponent& x, const Rational& c = 1) const {
    FormalSeries r(degree());
    for (int i = 0; i + k <= degree(); ++i)
      if (i + k >= 0 && !coeffs_[i].is_zero()) r.coeffs_[i + k] = coeffs_[i].times_monomial(x, c);
    return r;
  }

  /// Multiplicative inverse; the constant term must be 1.
  FormalSeries reciprocal() const {
    if (!(coeffs_[0] == LaurentPoly(1))) throw DomainError("series reciprocal needs constant term 1");
    FormalSeries r(degree());
    r.coeffs_[0] = 1;
    for (int n = 1; n <= degree(); ++n) {
      LaurentPoly acc;
      for (int i = 1; i <= n; ++i)
        if (!coeffs_[i].is_zero()) acc += coeffs_[i] * r.coeffs_[n - i];
      r.coeffs_[n] = -acc;
    }
    return r;
  }

  bool operator==(const FormalSeries& o) const { return coeffs_ == o.coeffs_; }

  /// Lowest X-degree where the two series differ.
  std::optional<int> first_mismatch(const FormalSeries& o) const {
    same_degree(o);
    for (int k = 0; k <= degree(); ++k)
      if (!(coeffs_[k] == o.coeffs_[k])) return k;
    return std::nullopt;
  }

 private:
  static int check(int degree) {
    if (degree < 0) throw DomainError("truncation degree must be non-negative");
    return degree;
  }
  void same_degree(const FormalSeries& o) const {
    if (o.degree() != degree()) throw DomainError("series truncated at different degrees");
  }

  std::vector<LaurentPoly> coeffs_;
};

}  // namespace moment_forge::formal
