#pragma once

// Brute-force helpers shared by the test binaries. Deliberately naive and independent of the library.

#include <optional>
#include <vector>

namespace parkfn::testing {

/// Every sequence in [1, n]^m, lexicographically.
inline std::vector<std::vector<int>> all_sequences(int m, int n) {
  std::vector<std::vector<int>> out;
  if (n < 1) {
    if (m == 0) out.emplace_back();
    return out;
  }
  std::vector<int> seq(static_cast<std::size_t>(m), 1);
  while (true) {
    out.push_back(seq);
    int i = m - 1;
    while (i >= 0 && seq[i] == n) seq[i--] = 1;
    if (i < 0) break;
    ++seq[i];
  }
  return out;
}

/// Linear-scan parking; nullopt when some car falls off the end.
inline std::optional<std::vector<int>> naive_park(const std::vector<int>& prefs, int n) {
  std::vector<char> taken(static_cast<std::size_t>(n) + 2, 0);
  std::vector<int> slots;
  for (int p : prefs) {
    int k = p;
    while (k <= n && taken[k]) ++k;
    if (k > n) return std::nullopt;
    taken[k] = 1;
    slots.push_back(k);
  }
  return slots;
}

}  // namespace parkfn::testing
