#pragma once

// Exact counts and enumerator polynomials for PF(m, n) and rooted forests.

#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "parkfn/enumerate.hpp"
#include "parkfn/errors.hpp"
#include "parkfn/forest.hpp"
#include "parkfn/numeric.hpp"
#include "parkfn/polynomial.hpp"

namespace parkfn {

namespace detail {

inline void require_m_le_n(std::int64_t m, std::int64_t n) {
  if (m < 0 || n < 0 || m > n)
    throw InputError("need 0 <= m <= n (m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")");
}

}  // namespace detail

/// |PF(m, n)| = (n - m + 1)(n + 1)^(m - 1); 1 when m = 0.
inline BigInt count_pf(std::int64_t m, std::int64_t n) {
  detail::require_m_le_n(m, n);
  if (m == 0) return 1;
  return BigInt(n - m + 1) * ipow(BigInt(n + 1), static_cast<std::uint64_t>(m - 1));
}

/// Same count via the first-car recursion, without the closed form.
inline BigInt count_pf_recursive(std::int64_t m, std::int64_t n) {
  detail::require_m_le_n(m, n);
  std::map<std::pair<std::int64_t, std::int64_t>, BigInt> memo;
  auto rec = [&memo](auto&& self, std::int64_t mm, std::int64_t nn) -> BigInt {
    if (mm == 0) return 1;
    if (auto it = memo.find({mm, nn}); it != memo.end()) return it->second;
    BigInt total = 0;
    for (std::int64_t k = nn - mm + 1; k <= nn; ++k)
      total += BigInt(k) * binomial(mm - 1, nn - k) * self(self, mm - nn + k - 1, k - 1) * self(self, nn - k, nn - k);
    memo.emplace(std::make_pair(mm, nn), total);
    return total;
  };
  return rec(rec, m, n);
}

/// #{pi in PF(m, n) : pi_1 = j}, summed in exact rationals and checked to be integral.
inline BigInt count_pf_first(std::int64_t m, std::int64_t n, std::int64_t j) {
  detail::require_m_le_n(m, n);
  if (j < 1 || j > n) throw InputError("first preference " + std::to_string(j) + " outside [1, n]");
  Rational sum = 0;
  const std::int64_t top = std::min(n - j, m - 1);
  for (std::int64_t s = 0; s <= top; ++s)
    sum += Rational(binomial(m - 1, s)) * rpow(n - s, m - s - 2) * rpow(s + 1, s - 1);
  return to_integer(Rational(n - m + 1) * sum);
}

/// #{pi in PF(m, n) whose unattempted spots are exactly the given holes}.
inline BigInt count_pf_with_holes(std::int64_t m, std::int64_t n, std::span<const int> holes) {
  detail::require_m_le_n(m, n);
  if (static_cast<std::int64_t>(holes.size()) != n - m)
    throw InputError("expected " + std::to_string(n - m) + " holes, got " + std::to_string(holes.size()));
  std::vector<std::int64_t> bounds{0};
  bounds.insert(bounds.end(), holes.begin(), holes.end());
  bounds.push_back(n + 1);
  BigInt product = 1;
  std::vector<std::int64_t> lengths;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const std::int64_t gap = bounds[i + 1] - bounds[i];
    if (gap < 1)
      throw InputError("holes must be strictly increasing within [1, n]");
    product *= to_integer(rpow(gap, gap - 2));
    lengths.push_back(gap - 1);
  }
  return product * multinomial(lengths);
}

/// c + y + y^2 + ... + y^d.
inline UnivariatePolynomial shifted_geometric(const BigInt& c, std::int64_t d) {
  std::vector<BigInt> coeffs(static_cast<std::size_t>(d) + 1, 1);
  coeffs[0] = c;
  return UnivariatePolynomial(std::move(coeffs));
}

/// Right-hand side of the first-car shuffle recurrence
///   D_{m,s} = sum_i C(m-1, i) (s + y + ... + y^i) D_{i,s} D_{m-1-i,1}.
/// The factor assumes the first car adds max(i + 1 - j, 0) to the displacement, which only holds
/// when the lower part fills its spots (s = 1). For s >= 2 the result has the right total count but
/// wrong coefficients from (m, s) = (3, 2) on; disp_enumerator does not use it there.
inline UnivariatePolynomial shuffle_recurrence_rhs(std::int64_t m, std::int64_t s) {
  if (m < 0 || s < 1) throw InputError("shuffle_recurrence_rhs needs m >= 0 and s >= 1");
  std::map<std::pair<std::int64_t, std::int64_t>, UnivariatePolynomial> memo;
  auto rec = [&memo](auto&& self, std::int64_t mm, std::int64_t ss) -> UnivariatePolynomial {
    if (mm == 0) return UnivariatePolynomial::constant(1);
    if (auto it = memo.find({mm, ss}); it != memo.end()) return it->second;
    UnivariatePolynomial total;
    for (std::int64_t i = 0; i <= mm - 1; ++i) {
      auto term = shifted_geometric(ss, i) * self(self, i, ss) * self(self, mm - 1 - i, 1);
      total += term * binomial(mm - 1, i);
    }
    memo.emplace(std::make_pair(mm, ss), total);
    return total;
  };
  return rec(rec, m, s);
}

/// D_{m,s}(y) = sum over PF(m, m + s - 1) of y^disp. Classical parts D_{x,1} come from the shuffle
/// recurrence at s = 1; a general pf splits into s classical segments with additive displacement,
/// so D_{m,s} = sum_x C(m, x) D_{x,1} D_{m-x,s-1}.
inline UnivariatePolynomial disp_enumerator(std::int64_t m, std::int64_t s) {
  if (m < 0 || s < 1) throw InputError("disp_enumerator needs m >= 0 and s >= 1");
  std::vector<UnivariatePolynomial> classical;
  for (std::int64_t x = 0; x <= m; ++x) classical.push_back(shuffle_recurrence_rhs(x, 1));
  std::vector<UnivariatePolynomial> current = classical;  // D_{x, 1}, x = 0..m
  for (std::int64_t t = 2; t <= s; ++t) {
    std::vector<UnivariatePolynomial> next(static_cast<std::size_t>(m) + 1);
    for (std::int64_t total = 0; total <= m; ++total)
      for (std::int64_t x = 0; x <= total; ++x)
        next[static_cast<std::size_t>(total)] += classical[static_cast<std::size_t>(x)] *
                                                  current[static_cast<std::size_t>(total - x)] * binomial(total, x);
    current = std::move(next);
  }
  return current[static_cast<std::size_t>(m)];
}

/// I_{m,s}(y) = sum over forests with s roots and m non-roots of y^inv, by enumeration.
inline UnivariatePolynomial inv_enumerator(int m, int s, const Limits& limits = {}) {
  std::vector<BigInt> coeffs;
  for_each_forest(
      m, s,
      [&](const RootedForest& f) {
        const auto inv = static_cast<std::size_t>(inversions(f));
        if (coeffs.size() <= inv) coeffs.resize(inv + 1);
        ++coeffs[inv];
      },
      limits);
  return UnivariatePolynomial(std::move(coeffs));
}

/// sum over PF(m, n) of q^(lucky cars) = (n - m + 1) q prod_{i=1}^{m-1} (i + (n - i + 1) q); 1 when m = 0.
inline UnivariatePolynomial lucky_gf(std::int64_t m, std::int64_t n) {
  detail::require_m_le_n(m, n);
  if (m == 0) return UnivariatePolynomial::constant(1);
  auto out = UnivariatePolynomial::monomial(1, n - m + 1);
  for (std::int64_t i = 1; i <= m - 1; ++i) out = out * UnivariatePolynomial({BigInt(i), BigInt(n - i + 1)});
  return out;
}

/// A_n(x, y; p, q) = sum_s C(n, s) (x + s)^(s + p) (y + n - s)^(n - s + q).
inline Rational abel_A(std::int64_t n, const Rational& x, const Rational& y, std::int64_t p, std::int64_t q) {
  if (n < 0) throw InputError("abel_A needs n >= 0");
  Rational sum = 0;
  for (std::int64_t s = 0; s <= n; ++s)
    sum += Rational(binomial(n, s)) * rpow(x + s, s + p) * rpow(y + n - s, n - s + q);
  return sum;
}

/// Graphs on m + s labeled vertices with m + k edges, s components, and roots 1..s in distinct
/// components. Brute force over edge subsets.
inline BigInt graph_count_components(int m, int s, int k, const Limits& limits = {}) {
  if (m < 0 || s < 1 || k < 0) throw InputError("graph_count_components needs m >= 0, s >= 1, k >= 0");
  const int v = m + s;
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b) edges.emplace_back(a, b);
  const int e = static_cast<int>(edges.size());
  const int pick = m + k;
  if (pick > e) return 0;
  detail::require_within(binomial(e, pick), limits, "graph enumeration");

  std::vector<int> chosen(static_cast<std::size_t>(pick));
  std::iota(chosen.begin(), chosen.end(), 0);
  std::vector<int> uf(static_cast<std::size_t>(v));
  auto find = [&uf](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  BigInt count = 0;
  while (true) {
    std::iota(uf.begin(), uf.end(), 0);
    int components = v;
    for (int idx : chosen) {
      const int a = find(edges[idx].first);
      const int b = find(edges[idx].second);
      if (a != b) {
        uf[a] = b;
        --components;
      }
    }
    if (components == s) {
      bool separated = true;
      std::vector<char> used(static_cast<std::size_t>(v), 0);
      for (int r = 0; r < s && separated; ++r) {
        const int c = find(r);
        separated = !used[c];
        used[c] = 1;
      }
      if (separated) ++count;
    }
    int i = pick - 1;
    while (i >= 0 && chosen[i] == e - pick + i) --i;
    if (i < 0) break;
    ++chosen[i];
    for (int t = i + 1; t < pick; ++t) chosen[t] = chosen[t - 1] + 1;
  }
  return count;
}

}  // namespace parkfn
