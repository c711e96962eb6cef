#pragma once

#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "moment_forge/error.hpp"

namespace moment_forge {

using Complex = std::complex<double>;

namespace arith {

/// A finite multiset of small complex shifts (the sets A, B, U, V, ...).
///
/// Elements keep their insertion order so that swap enumerations and reports
/// are reproducible; equality and hashing are order independent.
class ShiftMultiset {
 public:
  ShiftMultiset() = default;
  ShiftMultiset(std::initializer_list<Complex> shifts) : shifts_(shifts) {}
  explicit ShiftMultiset(std::vector<Complex> shifts) : shifts_(std::move(shifts)) {}

  /// k copies of the same shift (k copies of 0 give the classical d_k).
  static ShiftMultiset repeated(Complex value, std::size_t k) {
    return ShiftMultiset(std::vector<Complex>(k, value));
  }

  std::size_t size() const { return shifts_.size(); }
  bool empty() const { return shifts_.empty(); }
  const Complex& operator[](std::size_t i) const { return shifts_[i]; }
  auto begin() const { return shifts_.begin(); }
  auto end() const { return shifts_.end(); }
  const std::vector<Complex>& values() const { return shifts_; }

  bool contains(Complex a) const { return std::find(shifts_.begin(), shifts_.end(), a) != shifts_.end(); }

  /// Multiset union; multiplicities add.
  ShiftMultiset operator+(const ShiftMultiset& other) const {
    std::vector<Complex> out = shifts_;
    out.insert(out.end(), other.shifts_.begin(), other.shifts_.end());
    return ShiftMultiset(std::move(out));
  }

  ShiftMultiset with(Complex a) const {
    auto out = *this;
    out.shifts_.push_back(a);
    return out;
  }

  /// Removes one copy of `a`; throws DomainError when `a` is absent.
  ShiftMultiset remove(Complex a) const {
    auto it = std::find(shifts_.begin(), shifts_.end(), a);
    if (it == shifts_.end()) throw DomainError("shift " + format(a) + " is not in the multiset");
    auto out = *this;
    out.shifts_.erase(out.shifts_.begin() + (it - shifts_.begin()));
    return out;
  }

  /// Removes the element at position i.
  ShiftMultiset remove_at(std::size_t i) const {
    auto out = *this;
    out.shifts_.erase(out.shifts_.begin() + static_cast<std::ptrdiff_t>(i));
    return out;
  }

  ShiftMultiset negate() const { return map([](Complex a) { return -a; }); }
  ShiftMultiset conj() const { return map([](Complex a) { return std::conj(a); }); }
  /// A_w = {a + w : a in A}.
  ShiftMultiset shifted(Complex w) const { return map([w](Complex a) { return a + w; }); }

  Complex sum() const {
    Complex s = 0;
    for (auto a : shifts_) s += a;
    return s;
  }

  double max_abs() const {
    double m = 0;
    for (auto a : shifts_) m = std::max(m, std::abs(a));
    return m;
  }

  /// True when two elements coincide to within `tol`.
  bool has_repeats(double tol = 1e-12) const {
    for (std::size_t i = 0; i < shifts_.size(); ++i)
      for (std::size_t j = i + 1; j < shifts_.size(); ++j)
        if (std::abs(shifts_[i] - shifts_[j]) <= tol) return true;
    return false;
  }

  std::vector<Complex> sorted() const {
    auto out = shifts_;
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
  }

  bool operator==(const ShiftMultiset& other) const { return sorted() == other.sorted(); }

  /// FNV-1a over the sorted bit patterns; keys the divisor-table cache.
  std::uint64_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](double x) {
      auto bits = std::bit_cast<std::uint64_t>(x == 0.0 ? 0.0 : x);
      for (int i = 0; i < 8; ++i) {
        h ^= (bits >> (8 * i)) & 0xffu;
        h *= 1099511628211ull;
      }
    };
    for (auto a : sorted()) {
      mix(a.real());
      mix(a.imag());
    }
    return h;
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < shifts_.size(); ++i) {
      if (i) s += ", ";
      s += format(shifts_[i]);
    }
    return s + "}";
  }

  static std::string format(Complex a) {
    std::string s = std::to_string(a.real());
    if (a.imag() != 0) s += (a.imag() < 0 ? "-" : "+") + std::to_string(std::abs(a.imag())) + "i";
    return s;
  }

 private:
  template <class F>
  ShiftMultiset map(F f) const {
    std::vector<Complex> out;
    out.reserve(shifts_.size());
    for (auto a : shifts_) out.push_back(f(a));
    return ShiftMultiset(std::move(out));
  }

  std::vector<Complex> shifts_;
};

}  // namespace arith
}  // namespace moment_forge
