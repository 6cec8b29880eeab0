#pragma once

// Parking functions PF(m, n): m cars, n spots, preferences in [1, n].
//
// Spots and cars are 1-indexed in every interface. Containers are ordinary
// 0-based vectors, so car i lives at index i - 1.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "parkfn/errors.hpp"

namespace parkfn {

struct ParkingOutcome {
  std::vector<int> slots;          ///< slots[i-1] = spot where car i parks
  std::vector<int> displacement;   ///< slots[i-1] - prefs[i-1]
};

namespace detail {

inline void check_ranges(std::span<const int> prefs, std::int64_t m, std::int64_t n) {
  if (m < 0 || n < 0) throw InputError("car and spot counts must be non-negative");
  if (static_cast<std::int64_t>(prefs.size()) != m)
    throw InputError("expected " + std::to_string(m) + " preferences, got " + std::to_string(prefs.size()));
  if (m > n) throw InputError("more cars than spots (m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")");
  for (std::size_t i = 0; i < prefs.size(); ++i) {
    if (prefs[i] < 1 || prefs[i] > n)
      throw InputError("preference " + std::to_string(prefs[i]) + " of car " + std::to_string(i + 1) +
                       " outside [1, " + std::to_string(n) + "]");
  }
}

// Smallest free spot >= k, with path halving; n + 1 means "none".
inline int next_free(std::vector<int>& next, int k) {
  while (next[k] != k) {
    next[k] = next[next[k]];
    k = next[k];
  }
  return k;
}

}  // namespace detail

/// Prefix-count criterion: #{k : prefs_k <= i} >= m - n + i for i = n-m+1..n.
/// O(m + n) via a counting pass.
inline bool is_parking_function(std::span<const int> prefs, int m, int n) {
  detail::check_ranges(prefs, m, n);
  std::vector<int> count(static_cast<std::size_t>(n) + 1, 0);
  for (int p : prefs) ++count[p];
  int below = 0;
  for (int i = 1; i <= n; ++i) {
    below += count[i];
    if (i >= n - m + 1 && below < m - n + i) return false;
  }
  return true;
}

/// Rearrangement criterion: the sorted preferences satisfy lambda_i <= n - m + i.
inline bool satisfies_rearrangement_criterion(std::span<const int> prefs, int m, int n) {
  detail::check_ranges(prefs, m, n);
  std::vector<int> lambda(prefs.begin(), prefs.end());
  std::sort(lambda.begin(), lambda.end());
  for (int i = 1; i <= m; ++i)
    if (lambda[i - 1] > n - m + i) return false;
  return true;
}

/// Sequential parking: each car takes the first free spot at or after its preference.
/// Throws NotAParkingFunction carrying the first car that finds no spot.
inline ParkingOutcome park(std::span<const int> prefs, int m, int n) {
  detail::check_ranges(prefs, m, n);
  std::vector<int> next(static_cast<std::size_t>(n) + 2);
  std::iota(next.begin(), next.end(), 0);
  ParkingOutcome out;
  out.slots.reserve(prefs.size());
  out.displacement.reserve(prefs.size());
  for (std::size_t i = 0; i < prefs.size(); ++i) {
    const int spot = detail::next_free(next, prefs[i]);
    if (spot > n) throw NotAParkingFunction(i + 1);
    next[spot] = spot + 1;
    out.slots.push_back(spot);
    out.displacement.push_back(spot - prefs[i]);
  }
  return out;
}

/// An element of PF(m, n). Immutable; validity is established at construction by parking.
class ParkingFunction {
 public:
  ParkingFunction() = default;

  /// Throws InputError for out-of-range data, NotAParkingFunction if some car fails.
  ParkingFunction(std::vector<int> prefs, int n)
      : n_(n), prefs_(std::move(prefs)), outcome_(park(prefs_, static_cast<int>(prefs_.size()), n)) {}

  int cars() const { return static_cast<int>(prefs_.size()); }
  int spots() const { return n_; }
  std::span<const int> prefs() const { return prefs_; }
  /// Preference of car i (1-based).
  int pref(int car) const { return prefs_.at(static_cast<std::size_t>(car - 1)); }
  const ParkingOutcome& outcome() const { return outcome_; }

  friend bool operator==(const ParkingFunction& a, const ParkingFunction& b) {
    return a.n_ == b.n_ && a.prefs_ == b.prefs_;
  }
  friend bool operator<(const ParkingFunction& a, const ParkingFunction& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.prefs_ < b.prefs_;
  }

 private:
  int n_ = 0;
  std::vector<int> prefs_;
  ParkingOutcome outcome_;
};

inline std::int64_t displacement(const ParkingFunction& pf) {
  const auto& d = pf.outcome().displacement;
  return std::accumulate(d.begin(), d.end(), std::int64_t{0});
}

inline int lucky_count(const ParkingFunction& pf) {
  const auto& d = pf.outcome().displacement;
  return static_cast<int>(std::count(d.begin(), d.end(), 0));
}

/// r_k = number of cars whose first preference is spot k, k = 1..n.
inline std::vector<int> specification(const ParkingFunction& pf) {
  std::vector<int> r(static_cast<std::size_t>(pf.spots()), 0);
  for (int p : pf.prefs()) ++r[p - 1];
  return r;
}

/// Stable rank of each value: sigma_i = #{j : v_j < v_i, or v_j = v_i and j <= i}.
/// Values must lie in [1, maxValue].
inline std::vector<int> order_permutation(std::span<const int> values, int maxValue) {
  std::vector<int> start(static_cast<std::size_t>(maxValue) + 2, 0);
  for (int v : values) ++start[v + 1];
  std::partial_sum(start.begin(), start.end(), start.begin());
  std::vector<int> sigma;
  sigma.reserve(values.size());
  for (int v : values) sigma.push_back(++start[v]);
  return sigma;
}

inline std::vector<int> order_permutation(const ParkingFunction& pf) {
  return order_permutation(pf.prefs(), pf.spots());
}

/// Inverse of a permutation of [m] given in one-line notation (1-based values).
inline std::vector<int> inverse_permutation(std::span<const int> perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[static_cast<std::size_t>(perm[i] - 1)] = static_cast<int>(i + 1);
  return inv;
}

/// y_k = number of cars that attempt spot k; y_k = r_k after an idle step, else y_{k-1} - 1 + r_k.
inline std::vector<int> queue_profile(std::span<const int> r) {
  std::vector<int> y(r.size());
  int prev = 0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    y[k] = prev == 0 ? r[k] : prev - 1 + r[k];
    prev = y[k];
  }
  return y;
}

inline std::vector<int> queue_profile(const ParkingFunction& pf) { return queue_profile(specification(pf)); }

/// Spots no car ever probes, read off as the zeros of the queue profile; there are n - m of them.
inline std::vector<int> unattempted_spots(const ParkingFunction& pf) {
  const auto y = queue_profile(pf);
  std::vector<int> holes;
  for (std::size_t k = 0; k < y.size(); ++k)
    if (y[k] == 0) holes.push_back(static_cast<int>(k + 1));
  return holes;
}

/// Literal balance check on a specification and candidate holes k_1 < ... < k_{n-m}:
/// prefix(k_i) = k_i - i, prefix(j) > j - i - 1 strictly between holes, total = m.
inline bool satisfies_balance(std::span<const int> r, std::span<const int> holes, int m) {
  const int n = static_cast<int>(r.size());
  if (static_cast<int>(holes.size()) != n - m) return false;
  std::vector<std::int64_t> prefix(static_cast<std::size_t>(n) + 1, 0);
  for (int k = 1; k <= n; ++k) prefix[k] = prefix[k - 1] + r[k - 1];
  if (prefix[n] != m) return false;
  std::vector<int> bounds{0};
  bounds.insert(bounds.end(), holes.begin(), holes.end());
  bounds.push_back(n + 1);
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    if (bounds[i] >= bounds[i + 1]) return false;
    if (i > 0 && prefix[bounds[i]] != bounds[i] - static_cast<std::int64_t>(i)) return false;
    for (int j = bounds[i] + 1; j < bounds[i + 1]; ++j)
      if (prefix[j] <= j - static_cast<std::int64_t>(i) - 1) return false;
  }
  return true;
}

/// Specification r plus order permutation sigma.
struct CompatiblePair {
  int n = 0;
  std::vector<int> r;
  std::vector<int> sigma;

  friend bool operator==(const CompatiblePair&, const CompatiblePair&) = default;
};

inline CompatiblePair compatible_pair(const ParkingFunction& pf) {
  return {pf.spots(), specification(pf), order_permutation(pf)};
}

/// Rebuilds the parking function: i in sigma becomes the i-th smallest term of 1^{r_1} ... n^{r_n}.
/// Throws CompatibilityError naming the first violated condition.
inline ParkingFunction from_compatible_pair(const CompatiblePair& pair) {
  const int n = pair.n;
  if (n < 0 || static_cast<int>(pair.r.size()) != n)
    throw CompatibilityError("length", "specification must have exactly n entries");
  std::int64_t total = 0;
  for (int rk : pair.r) {
    if (rk < 0) throw CompatibilityError("sum", "negative specification entry");
    total += rk;
  }
  const auto m = static_cast<std::int64_t>(pair.sigma.size());
  if (total != m)
    throw CompatibilityError("sum", "specification sums to " + std::to_string(total) + " but sigma has " +
                                        std::to_string(m) + " entries");
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  for (int v : pair.sigma) {
    if (v < 1 || v > m || seen[v - 1]) throw CompatibilityError("permutation", "sigma is not a permutation of [m]");
    seen[v - 1] = 1;
  }

  // multiset[v-1] = v-th smallest term of 1^{r_1} ... n^{r_n}
  std::vector<int> multiset;
  multiset.reserve(static_cast<std::size_t>(m));
  for (int k = 1; k <= n; ++k) multiset.insert(multiset.end(), static_cast<std::size_t>(pair.r[k - 1]), k);

  std::vector<int> lastInBlock(static_cast<std::size_t>(n) + 1, 0);
  for (int v : pair.sigma) {
    const int block = multiset[v - 1];
    if (v < lastInBlock[block])
      throw CompatibilityError("block-order", "values of block " + std::to_string(block) +
                                                  " do not appear left to right in sigma");
    lastInBlock[block] = v;
  }

  if (m > n) throw CompatibilityError("balance", "more cars than spots");
  const auto y = queue_profile(pair.r);
  std::vector<int> holes;
  for (std::size_t k = 0; k < y.size(); ++k)
    if (y[k] == 0) holes.push_back(static_cast<int>(k + 1));
  if (!satisfies_balance(pair.r, holes, static_cast<int>(m)))
    throw CompatibilityError("balance", "specification is not balanced");

  std::vector<int> prefs;
  prefs.reserve(pair.sigma.size());
  for (int v : pair.sigma) prefs.push_back(multiset[v - 1]);
  return ParkingFunction(std::move(prefs), n);
}

/// Critical left-to-right maxima of a classical parking function (values in [1, len]).
inline int classical_critical_maxima(std::span<const int> v) {
  const int len = static_cast<int>(v.size());
  std::vector<int> count(static_cast<std::size_t>(len) + 2, 0);
  for (int x : v) ++count[x];
  std::vector<int> below(static_cast<std::size_t>(len) + 2, 0);  // below[j] = #{terms < j}
  for (int j = 1; j <= len + 1; ++j) below[j] = below[j - 1] + count[j - 1];
  int result = 0;
  int runningMax = 0;
  for (int x : v) {
    if (x > runningMax) {
      runningMax = x;
      const int less = below[x];
      const int greater = len - below[x] - count[x];
      if (less == x - 1 && greater == len - x) ++result;
    }
  }
  return result;
}

/// The pf cut at its unattempted spots into n - m + 1 classical parking functions.
struct SegmentDecomposition {
  int n = 0;
  std::vector<int> holes;                    ///< k_1 < ... < k_{n-m}
  std::vector<ParkingFunction> segments;     ///< segment i translated down by k_i (k_0 = 0)
  std::vector<std::vector<int>> members;     ///< 1-based car indices of segment i, increasing

  /// k_0 = 0, holes..., k_{n-m+1} = n + 1.
  std::vector<int> bounds() const {
    std::vector<int> b{0};
    b.insert(b.end(), holes.begin(), holes.end());
    b.push_back(n + 1);
    return b;
  }
};

inline SegmentDecomposition segment_decomposition(const ParkingFunction& pf) {
  SegmentDecomposition d;
  d.n = pf.spots();
  d.holes = unattempted_spots(pf);
  const auto bounds = d.bounds();
  const std::size_t count = bounds.size() - 1;

  std::vector<int> segmentOfSpot(static_cast<std::size_t>(d.n) + 1, 0);
  for (std::size_t i = 0; i < count; ++i)
    for (int k = bounds[i] + 1; k < bounds[i + 1]; ++k) segmentOfSpot[k] = static_cast<int>(i);

  std::vector<std::vector<int>> values(count);
  d.members.assign(count, {});
  for (int car = 1; car <= pf.cars(); ++car) {
    const int p = pf.pref(car);
    const auto seg = static_cast<std::size_t>(segmentOfSpot[p]);
    d.members[seg].push_back(car);
    values[seg].push_back(p - bounds[seg]);
  }
  d.segments.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const int len = bounds[i + 1] - bounds[i] - 1;
    d.segments.emplace_back(std::move(values[i]), len);
  }
  return d;
}

/// Inverse of segment_decomposition.
inline ParkingFunction reassemble(const SegmentDecomposition& d) {
  const auto bounds = d.bounds();
  if (d.segments.size() != bounds.size() - 1 || d.members.size() != d.segments.size())
    throw InputError("segment count must be one more than the hole count");
  std::size_t m = 0;
  for (const auto& mem : d.members) m += mem.size();
  std::vector<int> prefs(m, 0);
  for (std::size_t i = 0; i < d.segments.size(); ++i) {
    const auto& seg = d.segments[i];
    if (bounds[i + 1] <= bounds[i] || seg.spots() != bounds[i + 1] - bounds[i] - 1 ||
        seg.cars() != seg.spots() || d.members[i].size() != static_cast<std::size_t>(seg.cars()))
      throw InputError("segment " + std::to_string(i) + " does not fit between its holes");
    for (int c = 1; c <= seg.cars(); ++c) {
      const int car = d.members[i][static_cast<std::size_t>(c - 1)];
      if (car < 1 || static_cast<std::size_t>(car) > m || prefs[car - 1] != 0)
        throw InputError("segment members do not partition the cars");
      prefs[car - 1] = seg.pref(c) + bounds[i];
    }
  }
  return ParkingFunction(std::move(prefs), d.n);
}

/// Sum over segments of the classical critical left-to-right maxima of each translated segment.
inline int critical_lr_maxima(const ParkingFunction& pf) {
  const auto d = segment_decomposition(pf);
  int total = 0;
  for (const auto& seg : d.segments) total += classical_critical_maxima(seg.prefs());
  return total;
}

/// pi = (g(n-m+1) + 1, ..., g(n) + 1) for a function g on the non-root vertices of K_{n+1}.
struct MultiparkingCandidate {
  std::vector<int> prefs;
  bool valid = false;
};

inline MultiparkingCandidate multiparking_correspondence(std::span<const std::int64_t> g, int n) {
  MultiparkingCandidate out;
  const auto m = static_cast<std::int64_t>(g.size());
  bool inRange = m <= n;
  for (auto v : g) {
    if (v < 0) throw InputError("multiparking values must be non-negative");
    inRange = inRange && v + 1 <= n;
    out.prefs.push_back(static_cast<int>(std::min<std::int64_t>(v + 1, INT32_MAX)));
  }
  out.valid = inRange && is_parking_function(out.prefs, static_cast<int>(m), n);
  return out;
}

/// Subset definition of a K_{n+1}-multiparking function with roots 0..n-m: every nonempty set U of
/// non-root vertices has a vertex i with (n + 1 - |U|) > g(i). Sets containing a root pass because the
/// root is their smallest vertex. Exponential; intended for small m.
inline bool satisfies_multiparking_subset_criterion(std::span<const std::int64_t> g, int n) {
  const auto m = g.size();
  if (static_cast<int>(m) > n) return false;
  if (m > 24) throw ResourceLimit("subset criterion limited to 24 non-root vertices");
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    const auto size = static_cast<std::int64_t>(__builtin_popcountll(mask));
    bool witness = false;
    for (std::size_t i = 0; i < m && !witness; ++i)
      if ((mask >> i) & 1U) witness = (n + 1 - size) > g[i];
    if (!witness) return false;
  }
  return true;
}

/// Raw "m n : p1 ... pm" record, before any validity check.
struct PreferenceList {
  int m = 0;
  int n = 0;
  std::vector<int> prefs;
};

inline PreferenceList parse_preference_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  PreferenceList out;
  std::string colon;
  if (!(in >> out.m >> out.n >> colon) || colon != ":")
    throw ParseError("expected 'm n : p1 ... pm', got '" + std::string(text) + "'");
  if (out.m < 0 || out.n < 0) throw ParseError("counts must be non-negative");
  int p = 0;
  while (in >> p) out.prefs.push_back(p);
  if (!in.eof()) throw ParseError("non-integer preference in '" + std::string(text) + "'");
  if (static_cast<int>(out.prefs.size()) != out.m)
    throw ParseError("declared " + std::to_string(out.m) + " cars but listed " + std::to_string(out.prefs.size()));
  return out;
}

inline ParkingFunction parse_parking_function(std::string_view text) {
  auto raw = parse_preference_list(text);
  detail::check_ranges(raw.prefs, raw.m, raw.n);
  return ParkingFunction(std::move(raw.prefs), raw.n);
}

inline std::string to_text(const ParkingFunction& pf) {
  std::string out = std::to_string(pf.cars()) + " " + std::to_string(pf.spots()) + " :";
  for (int p : pf.prefs()) out += " " + std::to_string(p);
  return out;
}

}  // namespace parkfn
