#pragma once

// Tutte polynomials of complete graphs by deletion-contraction, and their parking-function side.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "parkfn/enumerate.hpp"
#include "parkfn/numeric.hpp"
#include "parkfn/parking_function.hpp"
#include "parkfn/polynomial.hpp"

namespace parkfn {

/// Largest n accepted by tutte_complete (graph K_{n+1}).
inline constexpr int kTutteMaxN = 6;

namespace detail {

/// Loopless multigraph as a symmetric multiplicity matrix.
struct MultiGraph {
  int v = 0;
  std::vector<int> mult;  // v * v

  int& at(int a, int b) { return mult[static_cast<std::size_t>(a * v + b)]; }
  int at(int a, int b) const { return mult[static_cast<std::size_t>(a * v + b)]; }

  static MultiGraph complete(int vertices) {
    MultiGraph g{vertices, std::vector<int>(static_cast<std::size_t>(vertices * vertices), 1)};
    for (int a = 0; a < vertices; ++a) g.at(a, a) = 0;
    return g;
  }

  /// Drops vertices without edges; they do not change the Tutte polynomial.
  MultiGraph without_isolated() const {
    std::vector<int> keep;
    for (int a = 0; a < v; ++a)
      for (int b = 0; b < v; ++b)
        if (at(a, b) > 0) {
          keep.push_back(a);
          break;
        }
    return induced(keep);
  }

  MultiGraph induced(const std::vector<int>& order) const {
    MultiGraph g{static_cast<int>(order.size()), std::vector<int>(order.size() * order.size(), 0)};
    for (int a = 0; a < g.v; ++a)
      for (int b = 0; b < g.v; ++b) g.at(a, b) = at(order[a], order[b]);
    return g;
  }

  /// Merges b into a and removes every a-b edge.
  MultiGraph contract(int a, int b) const {
    MultiGraph g = *this;
    for (int w = 0; w < v; ++w) {
      if (w == a || w == b) continue;
      g.at(a, w) += at(b, w);
      g.at(w, a) = g.at(a, w);
    }
    g.at(a, b) = g.at(b, a) = 0;
    std::vector<int> order;
    for (int w = 0; w < v; ++w)
      if (w != b) order.push_back(w);
    return g.induced(order);
  }

  /// Whether a and b stay connected once the a-b bundle is removed.
  bool connected_without(int a, int b) const {
    std::vector<char> seen(static_cast<std::size_t>(v), 0);
    std::vector<int> stack{a};
    seen[a] = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int w = 0; w < v; ++w) {
        if (seen[w] || at(x, w) == 0 || (x == a && w == b) || (x == b && w == a)) continue;
        if (w == b) return true;
        seen[w] = 1;
        stack.push_back(w);
      }
    }
    return false;
  }

  /// Isomorphism-invariant key: the lexicographically least upper triangle over all relabelings
  /// that sort vertices by (weighted degree, distinct neighbours).
  std::vector<int> canonical_key() const {
    std::vector<std::pair<int, int>> signature(static_cast<std::size_t>(v));
    for (int a = 0; a < v; ++a)
      for (int b = 0; b < v; ++b)
        if (at(a, b) > 0) {
          signature[a].first += at(a, b);
          signature[a].second += 1;
        }
    std::vector<int> order(static_cast<std::size_t>(v));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return signature[x] < signature[y]; });
    std::vector<std::pair<int, int>> groups;  // [begin, end) runs of equal signature
    for (int i = 0; i < v;) {
      int j = i;
      while (j < v && signature[order[j]] == signature[order[i]]) ++j;
      groups.emplace_back(i, j);
      i = j;
    }
    std::vector<int> best;
    std::vector<int> current;
    auto record = [&] {
      current.clear();
      current.push_back(v);
      for (int a = 0; a < v; ++a)
        for (int b = a + 1; b < v; ++b) current.push_back(at(order[a], order[b]));
      if (best.empty() || current < best) best = current;
    };
    // Odometer over the product of per-group permutations.
    for (auto [b, e] : groups) std::sort(order.begin() + b, order.begin() + e);
    while (true) {
      record();
      std::size_t g = 0;
      for (; g < groups.size(); ++g) {
        auto [b, e] = groups[g];
        if (std::next_permutation(order.begin() + b, order.begin() + e)) break;
      }
      if (g == groups.size()) break;
    }
    return best;
  }
};

inline BivariatePolynomial bundle_factor(bool bridge, int k) {
  BivariatePolynomial p;
  for (int d = 1; d < k; ++d) p.add_term(0, d, 1);
  p.add_term(bridge ? 1 : 0, 0, 1);
  return p;
}

inline BivariatePolynomial tutte_dc(const MultiGraph& input, std::map<std::vector<int>, BivariatePolynomial>* memo) {
  const MultiGraph g = input.without_isolated();
  if (g.v == 0) return BivariatePolynomial::constant(1);
  std::vector<int> key;
  if (memo != nullptr) {
    key = g.canonical_key();
    if (auto it = memo->find(key); it != memo->end()) return it->second;
  }
  int a = 0;
  int b = 1;
  while (g.at(a, b) == 0) {
    if (++b == g.v) {
      ++a;
      b = a + 1;
    }
  }
  const int k = g.at(a, b);
  BivariatePolynomial result;
  if (!g.connected_without(a, b)) {
    result = bundle_factor(true, k) * tutte_dc(g.contract(a, b), memo);
  } else {
    MultiGraph deleted = g;
    deleted.at(a, b) = deleted.at(b, a) = 0;
    result = tutte_dc(deleted, memo) + bundle_factor(false, k) * tutte_dc(g.contract(a, b), memo);
  }
  if (memo != nullptr) memo->emplace(std::move(key), result);
  return result;
}

inline void require_tutte_size(int n) {
  if (n < 0) throw InputError("tutte_complete needs n >= 0");
  if (n > kTutteMaxN)
    throw ResourceLimit("tutte_complete is limited to n <= " + std::to_string(kTutteMaxN));
}

}  // namespace detail

/// T_{K_{n+1}}(x, y) by deletion-contraction, memoized on canonical multigraph form.
inline BivariatePolynomial tutte_complete(int n) {
  detail::require_tutte_size(n);
  std::map<std::vector<int>, BivariatePolynomial> memo;
  return detail::tutte_dc(detail::MultiGraph::complete(n + 1), &memo);
}

/// Same recursion without memoization; a cross-check for the memo key.
inline BivariatePolynomial tutte_complete_unmemoized(int n) {
  detail::require_tutte_size(n);
  if (n > 4) throw ResourceLimit("unmemoized deletion-contraction is limited to n <= 4");
  return detail::tutte_dc(detail::MultiGraph::complete(n + 1), nullptr);
}

/// (cm, disp): the exponents of x and y contributed by pf.
inline std::pair<int, std::int64_t> tutte_monomial(const ParkingFunction& pf) {
  return {critical_lr_maxima(pf), displacement(pf)};
}

/// sum over PF(m, n) of x^cm y^disp.
inline BivariatePolynomial cm_disp_enumerator(int m, int n, const Limits& limits = {}) {
  BivariatePolynomial out;
  for_each_parking_function(
      m, n,
      [&](const ParkingFunction& pf) {
        const auto [cm, disp] = tutte_monomial(pf);
        out.add_term(cm, disp, 1);
      },
      limits);
  return out;
}

/// sum over PF(n, n) of x^cm y^disp.
inline BivariatePolynomial tutte_from_pf(int n, const Limits& limits = {}) { return cm_disp_enumerator(n, n, limits); }

/// Both sides of the forest identity: sum over compositions x_1 + ... + x_s = m of
/// multinomial * prod T_{K_{x_i+1}}, and sum over PF(m, m + s - 1) of x^cm y^disp.
inline std::pair<BivariatePolynomial, BivariatePolynomial> forest_tutte_identity(int m, int s, const Limits& limits = {}) {
  if (m < 0 || s < 1) throw InputError("forest_tutte_identity needs m >= 0 and s >= 1");
  std::vector<BivariatePolynomial> complete;
  for (int size = 0; size <= m; ++size) complete.push_back(tutte_complete(size));

  BivariatePolynomial left;
  std::vector<std::int64_t> parts(static_cast<std::size_t>(s), 0);
  auto compose = [&](auto&& self, int slot, int remaining) -> void {
    if (slot == s - 1) {
      parts[slot] = remaining;
      auto term = BivariatePolynomial::constant(multinomial(parts));
      for (auto p : parts) term = term * complete[static_cast<std::size_t>(p)];
      left += term;
      return;
    }
    for (int take = 0; take <= remaining; ++take) {
      parts[slot] = take;
      self(self, slot + 1, remaining - take);
    }
  };
  compose(compose, 0, m);
  return {left, cm_disp_enumerator(m, m + s - 1, limits)};
}

}  // namespace parkfn
