#pragma once

// Largest feasible first preference of a tail (pi_2, ..., pi_m) and its shuffle decomposition.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parkfn/errors.hpp"
#include "parkfn/parking_function.hpp"

namespace parkfn {

/// The j with (j, rest) in PF(m, n) form a prefix [k] of [n] or nothing; returns k.
inline std::optional<int> max_first_preference(std::span<const int> rest, int n) {
  const int m = static_cast<int>(rest.size()) + 1;
  if (n < 0) throw InputError("spot count must be non-negative");
  for (int p : rest)
    if (p < 1 || p > n) throw InputError("preference " + std::to_string(p) + " outside [1, " + std::to_string(n) + "]");
  if (m > n) return std::nullopt;
  std::vector<int> count(static_cast<std::size_t>(n) + 1, 0);
  for (int p : rest) ++count[p];
  int below = 0;
  int k = n;
  bool bounded = false;
  for (int i = 1; i <= n; ++i) {
    below += count[i];
    if (i < n - m + 1) continue;
    const int missing = m - n + i - below;  // cars still owed to [1, i]
    if (missing > 1) return std::nullopt;
    if (missing == 1 && !bounded) {
      k = i;
      bounded = true;
    }
  }
  return k;
}

/// (pi_2, ..., pi_m) as an interleaving of alpha in PF(m - n + k - 1, k - 1) and beta + k with
/// beta in PF(n - k, n - k).
struct ShuffleWitness {
  int k = 0;
  ParkingFunction alpha;
  ParkingFunction beta;
  std::vector<bool> fromAlpha;  ///< fromAlpha[t]: position t of the tail belongs to alpha
};

inline ShuffleWitness shuffle_decompose(std::span<const int> rest, int n) {
  const auto k = max_first_preference(rest, n);
  if (!k) throw NoFeasibleFirst("no first preference completes this tail to a parking function");
  std::vector<int> alpha;
  std::vector<int> beta;
  ShuffleWitness w;
  w.k = *k;
  for (int p : rest) {
    if (p == *k) throw Error("tail contains the maximal first preference " + std::to_string(p));
    w.fromAlpha.push_back(p < *k);
    if (p < *k) alpha.push_back(p);
    else beta.push_back(p - *k);
  }
  w.alpha = ParkingFunction(std::move(alpha), *k - 1);
  w.beta = ParkingFunction(std::move(beta), n - *k);
  return w;
}

/// Interleaves alpha and beta + k back into the tail.
inline std::vector<int> recompose(const ShuffleWitness& w) {
  std::vector<int> rest;
  int a = 1;
  int b = 1;
  for (bool fromAlpha : w.fromAlpha) rest.push_back(fromAlpha ? w.alpha.pref(a++) : w.beta.pref(b++) + w.k);
  return rest;
}

}  // namespace parkfn
