#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "moment_forge/formal/laurent.hpp"

namespace moment_forge::formal {

/// A multiset of formal shifts; each shift is a linear form in the symbols.
using FormalSet = std::vector<Exponent>;

inline FormalSet set_union(FormalSet a, const FormalSet& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// A_w = {a + w : a in A}.
inline FormalSet shift_set(FormalSet a, const Exponent& w) {
  for (auto& x : a) x = x + w;
  return a;
}

/// Removes one copy of `x`; DomainError when absent.
inline FormalSet remove_one(FormalSet a, const Exponent& x) {
  for (auto it = a.begin(); it != a.end(); ++it)
    if (*it == x) {
      a.erase(it);
      return a;
    }
  throw DomainError("shift is not an element of the set");
}

/// Memoised sequence n -> a(n) of Laurent polynomials, with a(n) = 0 for n < 0.
/// Copies share the memo; lookups are serialised by a lock, so one instance
/// may be read from several threads.
class SeqFun {
 public:
  using Fn = std::function<LaurentPoly(int)>;

  explicit SeqFun(Fn fn) : impl_(std::make_shared<Impl>(std::move(fn))) {}

  /// The sequence that is 1 at n = 0 and 0 elsewhere (the empty set).
  static SeqFun unit() {
    return SeqFun([](int n) { return n == 0 ? LaurentPoly(1) : LaurentPoly(); });
  }

  /// Finitely supported sequence values[0], values[1], ...
  static SeqFun from_values(std::vector<LaurentPoly> values) {
    return SeqFun([v = std::move(values)](int n) {
      return static_cast<std::size_t>(n) < v.size() ? v[n] : LaurentPoly();
    });
  }

  const LaurentPoly& operator()(int n) const {
    static const LaurentPoly zero;
    if (n < 0) return zero;
    std::lock_guard lock(impl_->mutex);
    auto it = impl_->memo.find(n);
    if (it == impl_->memo.end()) it = impl_->memo.emplace(n, impl_->fn(n)).first;
    return it->second;
  }

 private:
  struct Impl {
    explicit Impl(Fn f) : fn(std::move(f)) {}
    Fn fn;
    std::recursive_mutex mutex;
    std::map<int, LaurentPoly> memo;
  };
  std::shared_ptr<Impl> impl_;
};

/// A(n) = h_n of the monomials y^a, a in A: the local tau_A(p^n) with X = 1/p.
inline SeqFun set_fun(const FormalSet& shifts) {
  // rows[i][n] = h_n over the first i shifts, extended on demand.
  struct Table {
    FormalSet shifts;
    std::vector<std::vector<LaurentPoly>> rows;
    const LaurentPoly& get(int n) {
      while (static_cast<int>(rows[0].size()) <= n) {
        int m = static_cast<int>(rows[0].size());
        rows[0].push_back(m == 0 ? LaurentPoly(1) : LaurentPoly());
        for (std::size_t i = 1; i < rows.size(); ++i) {
          LaurentPoly v = rows[i - 1][m];
          if (m > 0) v += rows[i][m - 1].times_monomial(shifts[i - 1]);
          rows[i].push_back(std::move(v));
        }
      }
      return rows.back()[n];
    }
  };
  auto table = std::make_shared<Table>();
  table->shifts = shifts;
  table->rows.resize(shifts.size() + 1);
  return SeqFun([table](int n) { return table->get(n); });
}

/// A+ = A with the shift 0 adjoined: A+(d) = sum_{i <= d} A(i).
inline SeqFun plus_fun(const SeqFun& a) {
  return SeqFun([a](int d) {
    LaurentPoly s;
    for (int i = 0; i <= d; ++i) s += a(i);
    return s;
  });
}

/// Cauchy convolution (a * b)(m) = sum_{i + j = m} a(i) b(j).
inline SeqFun star(const SeqFun& a, const SeqFun& b) {
  return SeqFun([a, b](int m) {
    LaurentPoly s;
    for (int i = 0; i <= m; ++i) s += a(i) * b(m - i);
    return s;
  });
}

}  // namespace moment_forge::formal
