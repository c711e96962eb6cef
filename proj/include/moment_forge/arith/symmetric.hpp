#pragma once

#include <complex>
#include <vector>

namespace moment_forge::arith {

/// Streams the complete homogeneous symmetric polynomials h_0, h_1, ... of a
/// fixed list of variables z_1..z_k, i.e. the coefficients of
/// prod_i (1 - z_i x)^{-1}. Each step costs O(k).
///
/// With z_i = p^{-a_i} this is tau_A(p^n).
template <class T = std::complex<double>>
class HomogeneousStream {
 public:
  explicit HomogeneousStream(std::vector<T> z) : z_(std::move(z)), row_(z_.size() + 1, T(0)) {}

  /// Returns h_n for n = 0, 1, 2, ... on successive calls.
  T next() {
    // row_[i] holds h_{n-1}(z_1..z_i); update in place to h_n(z_1..z_i).
    row_[0] = (n_ == 0) ? T(1) : T(0);
    for (std::size_t i = 1; i < row_.size(); ++i) row_[i] = row_[i - 1] + z_[i - 1] * row_[i];
    ++n_;
    return row_.back();
  }

  int degree() const { return n_; }

 private:
  std::vector<T> z_;
  std::vector<T> row_;
  int n_ = 0;
};

/// h_0..h_n as a vector.
template <class T>
std::vector<T> homogeneous_upto(const std::vector<T>& z, int n) {
  HomogeneousStream<T> s(z);
  std::vector<T> out;
  out.reserve(n + 1);
  for (int j = 0; j <= n; ++j) out.push_back(s.next());
  return out;
}

}  // namespace moment_forge::arith
