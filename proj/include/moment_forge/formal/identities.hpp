#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "moment_forge/formal/calculus.hpp"

namespace moment_forge::formal {

struct SeriesPair {
  FormalSeries lhs;
  FormalSeries rhs;
};

namespace detail {

/// out += sign * y^x * X^k * src, where src is truncated at N - k.
inline void add_shifted(FormalSeries& out, const FormalSeries& src, int k, const Exponent& x, int sign) {
  for (int i = 0; i <= src.degree() && i + k <= out.degree(); ++i)
    if (!src[i].is_zero()) out[i + k] += src[i].times_monomial(x, sign);
}

/// sum_j a(j + offset) y^{j * w} X^j, truncated at `degree`.
inline FormalSeries tail_series(const SeqFun& a, int offset, const Exponent& w, int degree) {
  FormalSeries s(degree);
  for (int j = 0; j <= degree; ++j) s[j] = a(j + offset).times_monomial(w * j);
  return s;
}

}  // namespace detail

/// Both sides of F(a,A;b,B) + F(A,a;B,b) = C(A*b, a*B) + C(a,A) C(b,B).
inline SeriesPair lemma1_sides(const SeqFun& a, const SeqFun& big_a, const SeqFun& b, const SeqFun& big_b,
                               int degree) {
  return {f_op(a, big_a, b, big_b, degree) + f_op(big_a, a, big_b, b, degree),
          c_op(star(big_a, b), star(a, big_b), degree) + c_op(a, big_a, degree) * c_op(b, big_b, degree)};
}

/// The semi-diagonal local factor S_L + S_R - S_0, built from its defining
/// sums, against (1 - X^{1-alpha-beta}) C(A1' + A2 + {-beta}, B1' + B2 + {-alpha}).
inline SeriesPair semidiagonal_sides(const FormalSet& a1, const FormalSet& b1, const FormalSet& a2,
                                     const FormalSet& b2, const Exponent& alpha, const Exponent& beta, int degree) {
  const FormalSet a1p = remove_one(a1, alpha), b1p = remove_one(b1, beta);
  const SeqFun fa1p = set_fun(a1p), fb1p = set_fun(b1p), fa2 = set_fun(a2), fb2 = set_fun(b2);
  const int n_max = degree;

  // f(M, N): the summand of sum_{min(M,N)=0}. Every term carries an explicit
  // X-power e >= max(M, N, d), so M, N, d <= degree suffice.
  auto f = [&](int m, int n) {
    FormalSeries out(n_max);
    for (int q = 0; q <= 1; ++q)
      for (int d = 0; d <= n_max; ++d) {
        const int min_n = std::min(q + d, n), min_m = std::min(q + d, m);
        const int e = m + n + d - min_n - min_m + 2 * q;
        if (e > n_max) continue;
        const int deg = n_max - e;
        const Exponent sym = alpha * (-n + min_n - q) + beta * (-m + min_m - q);
        FormalSeries l(deg);
        for (int i = 0; i <= deg; ++i) l[i] = fa2(n + i) * fb2(m + i);
        auto jk = detail::tail_series(fa1p, q + d - min_n, -alpha, deg) *
                  detail::tail_series(fb1p, q + d - min_m, -beta, deg);
        detail::add_shifted(out, l * jk, e, sym, q == 0 ? 1 : -1);
      }
    return out;
  };

  FormalSeries lhs(degree);
  for (int m = 0; m <= n_max; ++m) lhs += f(m, 0);
  for (int n = 1; n <= n_max; ++n) lhs += f(0, n);

  auto left = set_union(set_union(a1p, a2), {-beta});
  auto right = set_union(set_union(b1p, b2), {-alpha});
  auto rhs = FormalSeries::one_minus(degree, 1, -(alpha + beta)) * c_op(set_fun(left), set_fun(right), degree);
  return {std::move(lhs), std::move(rhs)};
}

/// The reformulated two-swap identity: sum_{min(M,N)=0} of
/// X^{-M(gamma+beta) - N(alpha+delta)} Sigma_1 Sigma_2 X^{M+N} against
/// (1 - X^{1-alpha-beta})(1 - X^{1-gamma-delta}) C(A + C + {-beta,-delta}, B + D + {-alpha,-gamma}).
inline SeriesPair theorem2_sides(const FormalSet& a, const FormalSet& b, const FormalSet& c, const FormalSet& d,
                                 const Exponent& alpha, const Exponent& beta, const Exponent& gamma,
                                 const Exponent& delta, int degree) {
  const SeqFun fa = set_fun(shift_set(a, -alpha)), fb = set_fun(shift_set(b, -beta));
  const SeqFun fc = set_fun(shift_set(c, -gamma)), fd = set_fun(shift_set(d, -delta));

  // Sigma(M, N) truncated at `deg`, with first/second arguments reduced by min(q+d, n1) and min(q+d, n2).
  auto sigma = [](int m, int n, const SeqFun& f1, const SeqFun& f2, const Exponent& pair, int n1, int n2,
                  int deg) {
    FormalSeries out(deg);
    for (int q = 0; q <= 1; ++q)
      for (int dd = 0; dd <= deg + std::max(m, n); ++dd) {
        const int e = 2 * q + dd - std::min(q + dd, m) - std::min(q + dd, n);
        if (e > deg) continue;
        auto jk = detail::tail_series(f1, q + dd - std::min(q + dd, n1), Exponent{}, deg - e) *
                  detail::tail_series(f2, q + dd - std::min(q + dd, n2), Exponent{}, deg - e);
        detail::add_shifted(out, jk, e, pair * dd, q == 0 ? 1 : -1);
      }
    return out;
  };

  auto f = [&](int m, int n) {
    FormalSeries out(degree);
    const int deg = degree - m - n;
    if (deg < 0) return out;
    auto s1 = sigma(m, n, fa, fb, alpha + beta, n, m, deg);
    auto s2 = sigma(m, n, fc, fd, gamma + delta, m, n, deg);
    detail::add_shifted(out, s1 * s2, m + n, (gamma + beta) * -m + (alpha + delta) * -n, 1);
    return out;
  };

  FormalSeries lhs(degree);
  for (int m = 0; m <= degree; ++m) lhs += f(m, 0);
  for (int n = 1; n <= degree; ++n) lhs += f(0, n);

  auto left = set_union(set_union(a, c), {-beta, -delta});
  auto right = set_union(set_union(b, d), {-alpha, -gamma});
  auto rhs = FormalSeries::one_minus(degree, 1, -(alpha + beta)) *
             FormalSeries::one_minus(degree, 1, -(gamma + delta)) * c_op(set_fun(left), set_fun(right), degree);
  return {std::move(lhs), std::move(rhs)};
}

struct Mismatch {
  int degree = 0;
  std::string monomial;
  std::string lhs;
  std::string rhs;
};

/// Outcome of one exact identity check.
struct Certificate {
  std::string identity;
  std::vector<int> sizes;
  int degree = 0;
  bool equal = false;
  std::optional<Mismatch> first_mismatch;
  double wall_time = 0;

  nlohmann::json to_json() const {
    nlohmann::json j{{"schema", 1}, {"identity", identity}, {"set_sizes", sizes},
                     {"degree", degree}, {"equal", equal}, {"wall_time", wall_time}};
    if (first_mismatch)
      j["first_mismatch"] = {{"degree", first_mismatch->degree},
                             {"monomial", first_mismatch->monomial},
                             {"lhs", first_mismatch->lhs},
                             {"rhs", first_mismatch->rhs}};
    else
      j["first_mismatch"] = nullptr;
    return j;
  }
};

inline Certificate certify(std::string identity, std::vector<int> sizes, const SeriesPair& sides,
                           const SymbolTable& symbols, double wall_time) {
  Certificate cert{std::move(identity), std::move(sizes), sides.lhs.degree(), true, std::nullopt, wall_time};
  if (auto k = sides.lhs.first_mismatch(sides.rhs)) {
    cert.equal = false;
    auto diff = sides.lhs[*k] - sides.rhs[*k];
    const Exponent& x = diff.terms().begin()->first;
    cert.first_mismatch = Mismatch{*k, symbols.format(x), sides.lhs[*k].coefficient(x).str(),
                                   sides.rhs[*k].coefficient(x).str()};
  }
  return cert;
}

/// Times `build` and certifies the pair it returns.
template <class Build>
Certificate timed_certificate(std::string identity, std::vector<int> sizes, const SymbolTable& symbols,
                              Build&& build) {
  auto start = std::chrono::steady_clock::now();
  SeriesPair sides = build();
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return certify(std::move(identity), std::move(sizes), sides, symbols, elapsed);
}

}  // namespace moment_forge::formal
