#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "moment_forge/error.hpp"

namespace moment_forge::formal {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::size_t kMaxSymbols = 16;

/// Exponent vector of a monomial prod_i y_i^{e_i}. Also used as a formal
/// shift: the shift a = sum_i e_i * alpha_i has monomial X^a = prod_i y_i^{e_i}.
struct Exponent {
  std::array<std::int16_t, kMaxSymbols> e{};

  auto operator<=>(const Exponent&) const = default;

  Exponent operator+(const Exponent& o) const {
    Exponent r;
    for (std::size_t i = 0; i < kMaxSymbols; ++i) r.e[i] = static_cast<std::int16_t>(e[i] + o.e[i]);
    return r;
  }
  Exponent operator-() const { return *this * -1; }
  Exponent operator-(const Exponent& o) const { return *this + (-o); }
  Exponent operator*(int k) const {
    Exponent r;
    for (std::size_t i = 0; i < kMaxSymbols; ++i) r.e[i] = static_cast<std::int16_t>(e[i] * k);
    return r;
  }
  bool is_zero() const { return *this == Exponent{}; }
};

/// Interned symbol names for one verification session.
class SymbolTable {
 public:
  /// Exponent of the symbol `name`, interning it on first use.
  Exponent symbol(const std::string& name) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return unit(i);
    if (names_.size() == kMaxSymbols)
      throw CapacityError("more than " + std::to_string(kMaxSymbols) + " formal symbols");
    names_.push_back(name);
    return unit(names_.size() - 1);
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }

  /// "1" or e.g. "y_a^2*y_b^-1".
  std::string format(const Exponent& x) const {
    std::string out;
    for (std::size_t i = 0; i < kMaxSymbols; ++i) {
      if (x.e[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += "y_" + (i < names_.size() ? names_[i] : "s" + std::to_string(i));
      if (x.e[i] != 1) out += "^" + std::to_string(x.e[i]);
    }
    return out.empty() ? "1" : out;
  }

 private:
  static Exponent unit(std::size_t i) {
    Exponent x;
    x.e[i] = 1;
    return x;
  }
  std::vector<std::string> names_;
};

/// Laurent polynomial in the symbols with exact rational coefficients; zero
/// coefficients are never stored, so structural equality is mathematical equality.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_[Exponent{}] = c;
  }
  LaurentPoly(int c) : LaurentPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static LaurentPoly monomial(const Exponent& x, const Rational& c = 1) {
    LaurentPoly p;
    if (c != 0) p.terms_[x] = c;
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Exponent, Rational>& terms() const { return terms_; }

  Rational coefficient(const Exponent& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  LaurentPoly& add_term(const Exponent& x, const Rational& c) {
    if (c == 0) return *this;
    auto [it, inserted] = terms_.try_emplace(x, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
    return *this;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [x, c] : o.terms_) add_term(x, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [x, c] : o.terms_) add_term(x, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  LaurentPoly operator-() const { return LaurentPoly() - *this; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [x, c] : a.terms_)
      for (const auto& [y, d] : b.terms_) r.add_term(x + y, c * d);
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  /// Multiplies by c * y^x.
  LaurentPoly times_monomial(const Exponent& x, const Rational& c = 1) const {
    LaurentPoly r;
    if (c == 0) return r;
    for (const auto& [y, d] : terms_) r.terms_.emplace_hint(r.terms_.end(), x + y, c * d);
    return r;
  }

  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

  std::string to_string(const SymbolTable& symbols) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [x, c] : terms_) {
      std::string coeff = c.str();
      if (!out.empty()) out += coeff.front() == '-' ? " - " : " + ";
      else if (coeff.front() == '-') out += "-";
      if (coeff.front() == '-') coeff.erase(0, 1);
      std::string mono = symbols.format(x);
      if (mono == "1") out += coeff;
      else if (coeff == "1") out += mono;
      else out += coeff + "*" + mono;
    }
    return out;
  }

 private:
  std::map<Exponent, Rational> terms_;
};

}  // namespace moment_forge::formal
