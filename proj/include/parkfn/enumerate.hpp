#pragma once

// Brute-force enumeration of PF(m, n) and of rooted forests; the oracle behind the identity tests.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "parkfn/errors.hpp"
#include "parkfn/forest.hpp"
#include "parkfn/numeric.hpp"
#include "parkfn/parking_function.hpp"

namespace parkfn {

/// Hard ceilings for brute-force work. Exceeding one raises ResourceLimit; nothing is truncated.
struct Limits {
  std::uint64_t maxObjects = 10'000'000;
};

namespace detail {

inline void require_within(const BigInt& work, const Limits& limits, const std::string& what) {
  if (work > limits.maxObjects)
    throw ResourceLimit(what + " needs " + work.str() + " steps, cap is " + std::to_string(limits.maxObjects));
}

}  // namespace detail

/// Calls visit on every element of PF(m, n) in lexicographic order of preferences.
inline void for_each_parking_function(int m, int n, const std::function<void(const ParkingFunction&)>& visit,
                                      const Limits& limits = {}) {
  if (m < 0 || n < 0 || m > n) throw InputError("enumeration needs 0 <= m <= n");
  detail::require_within(ipow(BigInt(n + 1), static_cast<std::uint64_t>(m)), limits,
                         "enumerating PF(" + std::to_string(m) + "," + std::to_string(n) + ")");
  std::vector<int> prefs(static_cast<std::size_t>(m), 1);
  while (true) {
    if (is_parking_function(prefs, m, n)) visit(ParkingFunction(prefs, n));
    int i = m - 1;
    while (i >= 0 && prefs[i] == n) prefs[i--] = 1;
    if (i < 0) break;
    ++prefs[i];
  }
}

inline std::vector<ParkingFunction> enumerate_pf(int m, int n, const Limits& limits = {}) {
  std::vector<ParkingFunction> out;
  for_each_parking_function(m, n, [&](const ParkingFunction& pf) { out.push_back(pf); }, limits);
  return out;
}

/// Calls visit on every forest with s roots and m non-roots, via predecessor maps with cycle pruning.
inline void for_each_forest(int m, int s, const std::function<void(const RootedForest&)>& visit,
                            const Limits& limits = {}) {
  if (m < 0 || s < 0) throw InputError("forest enumeration needs m, s >= 0");
  if (m > 0 && s == 0) return;
  const BigInt total = m == 0 ? BigInt(1) : BigInt(s) * ipow(BigInt(m + s), static_cast<std::uint64_t>(m - 1));
  detail::require_within(total, limits, "enumerating forests (m=" + std::to_string(m) + ", s=" + std::to_string(s) + ")");

  // Candidate predecessors: roots 1..s, then non-roots 1..m.
  std::vector<ForestVertex> parents(static_cast<std::size_t>(m));
  std::vector<char> assigned(static_cast<std::size_t>(m), 0);
  auto closes_cycle = [&](int j, int p) {
    for (int v = p; v != 0;) {
      if (v == j) return true;
      if (!assigned[v - 1] || parents[v - 1].is_root()) return false;
      v = parents[v - 1].index;
    }
    return false;
  };
  std::function<void(int)> extend = [&](int j) {
    if (j > m) {
      visit(RootedForest(s, parents));
      return;
    }
    assigned[j - 1] = 1;
    for (int i = 1; i <= s; ++i) {
      parents[j - 1] = ForestVertex::root(i);
      extend(j + 1);
    }
    for (int p = 1; p <= m; ++p) {
      if (p == j || closes_cycle(j, p)) continue;
      parents[j - 1] = ForestVertex::non_root(p);
      extend(j + 1);
    }
    assigned[j - 1] = 0;
  };
  extend(1);
}

inline std::vector<RootedForest> enumerate_forests(int m, int s, const Limits& limits = {}) {
  std::vector<RootedForest> out;
  for_each_forest(m, s, [&](const RootedForest& f) { out.push_back(f); }, limits);
  return out;
}

}  // namespace parkfn
