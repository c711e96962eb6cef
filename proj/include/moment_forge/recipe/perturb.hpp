#pragma once

#include <utility>
#include <vector>

#include "moment_forge/arith/shift_multiset.hpp"
#include "moment_forge/error.hpp"

namespace moment_forge::recipe {

using arith::ShiftMultiset;

/// Spreads the shifts by eps times distinct positive weights: A_i += (i+1) eps,
/// B_j += (|A| + j + 1) eps. Within-set differences and every cross sum a + b
/// of the original zeros then become nonzero multiples of eps.
inline std::pair<ShiftMultiset, ShiftMultiset> perturb(const ShiftMultiset& a, const ShiftMultiset& b, double eps) {
  std::vector<Complex> pa, pb;
  for (std::size_t i = 0; i < a.size(); ++i) pa.push_back(a[i] + eps * static_cast<double>(i + 1));
  for (std::size_t j = 0; j < b.size(); ++j) pb.push_back(b[j] + eps * static_cast<double>(a.size() + j + 1));
  return {ShiftMultiset(std::move(pa)), ShiftMultiset(std::move(pb))};
}

/// (f(A+, B+) + f(A-, B-)) / 2 with A+- = perturb(A, B, +-eps): the O(eps)
/// error cancels, leaving O(eps^2). `f` returns anything closed under + and
/// scaling by 0.5.
template <class F>
auto perturbed_average(const ShiftMultiset& a, const ShiftMultiset& b, double eps, F&& f) {
  if (!(eps > 0)) throw DomainError("perturbation eps must be positive");
  auto [ap, bp] = perturb(a, b, eps);
  auto [am, bm] = perturb(a, b, -eps);
  auto plus = f(ap, bp);
  auto minus = f(am, bm);
  return (plus + minus) * 0.5;
}

}  // namespace moment_forge::recipe
