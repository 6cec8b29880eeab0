#pragma once

// Exact and asymptotic laws of single coordinates, displacement, holes, lucky cars and repeats
// under the uniform distribution on PF(m, n). Exact results are Rational; asymptotic ones double.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <vector>

#include "parkfn/counting.hpp"
#include "parkfn/enumerate.hpp"
#include "parkfn/numeric.hpp"
#include "parkfn/parking_function.hpp"

namespace parkfn {

// ---------------------------------------------------------------------------------------------
// First coordinate

/// P(pi_1 = j), j = 1..n.
inline std::vector<Rational> pmf_first_coordinate(std::int64_t m, std::int64_t n) {
  detail::require_m_le_n(m, n);
  if (m == 0) throw InputError("pmf_first_coordinate needs at least one car");
  const BigInt total = count_pf(m, n);
  std::vector<Rational> pmf;
  pmf.reserve(static_cast<std::size_t>(n));
  // Accumulate the Abel-type sum from j = n downwards: term s joins once j <= n - s.
  Rational running = 0;
  std::vector<Rational> suffix(static_cast<std::size_t>(n) + 1);
  for (std::int64_t j = n; j >= 1; --j) {
    const std::int64_t s = n - j;
    if (s <= m - 1) running += Rational(binomial(m - 1, s)) * rpow(n - s, m - s - 2) * rpow(s + 1, s - 1);
    suffix[static_cast<std::size_t>(j)] = running;
  }
  for (std::int64_t j = 1; j <= n; ++j)
    pmf.push_back(Rational(n - m + 1) * suffix[static_cast<std::size_t>(j)] / Rational(total));
  return pmf;
}

/// P(pi_1 = j and the tail admits exactly [k] as first preferences), the same for every j <= k:
/// C(m-1, n-k) k^(m-n+k-2) (n-k+1)^(n-k-1) / (n+1)^(m-1), for n - m + 1 <= k <= n.
inline Rational component_weight(std::int64_t m, std::int64_t n, std::int64_t k) {
  detail::require_m_le_n(m, n);
  if (m == 0 || k < n - m + 1 || k > n) return 0;
  return Rational(binomial(m - 1, n - k)) * rpow(k, m - n + k - 2) * rpow(n - k + 1, n - k - 1) /
         Rational(ipow(BigInt(n + 1), static_cast<std::uint64_t>(m - 1)));
}

/// E(pi_1^l), exact.
inline Rational moment_first(std::int64_t m, std::int64_t n, std::int64_t l) {
  const auto pmf = pmf_first_coordinate(m, n);
  Rational sum = 0;
  for (std::int64_t j = 1; j <= n; ++j) sum += rpow(j, l) * pmf[static_cast<std::size_t>(j - 1)];
  return sum;
}

/// Large-n expansion of E(pi_1^l): n^l/(l+1) (1 + (1-c+l(1-3c))/(2(1-c)) / n) for m = cn < n;
/// for m = n only l = 1, 2 are available.
inline double moment_first_asymptotic(std::int64_t m, std::int64_t n, std::int64_t l) {
  if (m < 1 || m > n || l < 1) throw InputError("moment_first_asymptotic needs 1 <= m <= n and l >= 1");
  const double nd = static_cast<double>(n);
  if (m < n) {
    const double c = static_cast<double>(m) / nd;
    const double ld = static_cast<double>(l);
    return std::pow(nd, ld) / (ld + 1) * (1 + (1 - c + ld * (1 - 3 * c)) / (2 * (1 - c)) / nd);
  }
  constexpr double pi = std::numbers::pi;
  if (l == 1) return nd / 2 * (1 - std::sqrt(pi / (2 * nd)) + 10 / (3 * nd));
  if (l == 2) return nd * nd / 3 * (1 - 3 * std::sqrt(2 * pi) / (4 * std::sqrt(nd)) + 11 / (2 * nd));
  throw DomainError("for m = n only the first two moments have an expansion");
}

// ---------------------------------------------------------------------------------------------
// Borel law

/// e^{-mu j} (mu j)^{j-1} / j!, computed in log space.
inline double borel_pmf(double mu, std::int64_t j) {
  if (mu < 0 || mu > 1) throw InputError("Borel parameter must lie in [0, 1]");
  if (j < 1) return 0;
  if (mu == 0) return j == 1 ? 1.0 : 0.0;
  const double jd = static_cast<double>(j);
  return std::exp(-mu * jd + (jd - 1) * std::log(mu * jd) - std::lgamma(jd + 1));
}

namespace detail {
inline double borel_horizon(double mu) { return mu < 1 ? 10 / (1 - mu) : 1e7; }
}  // namespace detail

/// Sum of pmf(mu, i) for i >= from, stopping once a term drops below 1e-15 of the accumulated mass
/// past i = 10/(1 - mu).
inline double borel_sum_from(double mu, std::int64_t from) {
  const double horizon = detail::borel_horizon(mu);
  double mass = 0;
  for (std::int64_t i = std::max<std::int64_t>(from, 1);; ++i) {
    const double term = borel_pmf(mu, i);
    mass += term;
    const auto id = static_cast<double>(i);
    if ((id > horizon && term <= 1e-15 * mass) || id > 1e7) break;
  }
  return mass;
}

/// Q_mu(j) = P(X >= j). Summed directly for mu < 1; for mu = 1 the tail decays like j^{-1/2}, so it
/// is 1 minus the head instead.
inline double borel_tail(double mu, std::int64_t j) {
  if (mu < 0 || mu > 1) throw InputError("Borel parameter must lie in [0, 1]");
  if (j <= 1) return 1.0;
  if (mu < 1) return borel_sum_from(mu, j);
  double head = 0;
  for (std::int64_t i = 1; i < j; ++i) head += borel_pmf(mu, i);
  return std::max(0.0, 1.0 - head);
}

/// Asymptotic approximations at the two ends of the first-coordinate law.
struct BoundaryLaws {
  double c = 0;                 ///< m / n
  double rightEnd = 0;          ///< e^{-c} / n, approximating P(pi_1 = n)
  double rightTail = 0;         ///< (1 - Q_c(j + 2)) / n, approximating P(pi_1 = n - j)
  double rightComponent = 0;    ///< P_c(X = j + 1) / n, approximating component_weight(k = n - j)
  double plateau = 0;           ///< 1 / n, approximating P(pi_1 = i) for i <= n - m + 1
  double poissonMean = 0;       ///< n (1 - c) / e
  double leftComponentRatio = 0;  ///< P(Y = j) / P(Y = 0), approximating the weight ratio at k = n - m + 1 + j
};

inline BoundaryLaws boundary_laws(std::int64_t m, std::int64_t n, std::int64_t j) {
  detail::require_m_le_n(m, n);
  if (m == 0 || j < 0) throw InputError("boundary_laws needs m >= 1 and j >= 0");
  BoundaryLaws b;
  const double nd = static_cast<double>(n);
  b.c = static_cast<double>(m) / nd;
  b.rightEnd = std::exp(-b.c) / nd;
  b.rightTail = (1 - borel_tail(b.c, j + 2)) / nd;
  b.rightComponent = borel_pmf(b.c, j + 1) / nd;
  b.plateau = 1 / nd;
  b.poissonMean = nd * (1 - b.c) / std::numbers::e;
  const double jd = static_cast<double>(j);
  b.leftComponentRatio = std::exp(jd * std::log(b.poissonMean) - std::lgamma(jd + 1));
  return b;
}

// ---------------------------------------------------------------------------------------------
// Displacement

/// Q_r(m, n) = sum_{j >= 0} C(r + j, j) n (n-1) ... (n-j+1) / m^j; the sum is finite.
inline Rational q_function(std::int64_t r, std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 0 || r < 0) throw InputError("q_function needs m >= 1, n >= 0, r >= 0");
  Rational sum = 0;
  Rational falling = 1;  // n (n-1) ... (n-j+1) / m^j
  for (std::int64_t j = 0; j <= n; ++j) {
    sum += Rational(binomial(r + j, j)) * falling;
    falling *= Rational(n - j, m);
  }
  return sum;
}

/// Ramanujan's Q(n) = Q_0(n, n - 1).
inline Rational ramanujan_q(std::int64_t n) { return q_function(0, n, n - 1); }

struct DispMoments {
  Rational mean;
  Rational secondMoment;
  Rational variance() const { return secondMoment - mean * mean; }
};

/// Closed forms for E(disp) and E(disp^2) through Q-functions, with a = n - m + 1 free spots' worth.
inline DispMoments disp_moments_exact(std::int64_t m, std::int64_t n) {
  detail::require_m_le_n(m, n);
  if (m == 0) return {0, 0};
  const Rational nr(n);
  if (m == n) {
    const Rational q = ramanujan_q(n + 1);
    DispMoments d;
    d.mean = Rational(n + 1, 2) * (q - 1) - Rational(n, 2);
    d.secondMoment = nr / 12 * (5 * nr * nr + 13 * nr + 4 - (14 * nr + 8) * Rational(n + 1, n) * (q - 1));
    return d;
  }
  const Rational mr(m);
  const Rational a(n - m + 1);
  const Rational q = q_function(0, n + 1, m - 1);
  DispMoments d;
  d.mean = mr / 2 * (q - 1);
  d.secondMoment = mr / 12 *
                   (a * a * a + (mr + 3) * a * a + (8 * mr + 1) * a + 5 * mr * mr + 4 * mr - 1 -
                    (a * a * a + 4 * a * a + (6 * mr + 3) * a + 8 * mr) * q);
  return d;
}

/// Exact first- and second-order coordinate statistics of PF(n, n) by enumeration.
struct CovarianceRecord {
  Rational varFirst;       ///< Var(pi_1)
  Rational covFirstTwo;    ///< Cov(pi_1, pi_2); 0 when n < 2
  Rational varDisp;        ///< Var(disp)
  Rational decomposition;  ///< n Var(pi_1) + n (n-1) Cov(pi_1, pi_2)
};

inline CovarianceRecord covariance_exact(int n, const Limits& limits = {}) {
  if (n < 1) throw InputError("covariance_exact needs n >= 1");
  Rational s1 = 0, s11 = 0, s12 = 0, d1 = 0, d2 = 0;
  std::int64_t count = 0;
  for_each_parking_function(
      n, n,
      [&](const ParkingFunction& pf) {
        const int a = pf.pref(1);
        const int b = n >= 2 ? pf.pref(2) : 0;
        const auto d = displacement(pf);
        s1 += a;
        s11 += a * a;
        s12 += a * b;
        d1 += d;
        d2 += Rational(d) * d;
        ++count;
      },
      limits);
  const Rational total(count);
  CovarianceRecord r;
  const Rational mean = s1 / total;
  r.varFirst = s11 / total - mean * mean;
  r.covFirstTwo = n >= 2 ? s12 / total - mean * mean : Rational(0);
  r.varDisp = d2 / total - (d1 / total) * (d1 / total);
  r.decomposition = Rational(n) * r.varFirst + Rational(n) * (n - 1) * r.covFirstTwo;
  return r;
}

/// Var(pi_1) ~ n^2/12 + (4 - 3 pi) n / 24 and Cov(pi_1, pi_2) ~ (8 - 3 pi) n / 24 + (208 - 57 pi) / 144.
inline std::pair<double, double> covariance_asymptotic(std::int64_t n) {
  constexpr double pi = std::numbers::pi;
  const double nd = static_cast<double>(n);
  return {nd * nd / 12 + (4 - 3 * pi) * nd / 24, (8 - 3 * pi) * nd / 24 + (208 - 57 * pi) / 144};
}

// ---------------------------------------------------------------------------------------------
// Holes, lucky cars, repeats

/// E(k_i) = i (n + 1) / (n - m + 1), i = 1..n-m.
inline std::vector<Rational> expected_holes(std::int64_t m, std::int64_t n) {
  detail::require_m_le_n(m, n);
  std::vector<Rational> out;
  for (std::int64_t i = 1; i <= n - m; ++i) out.emplace_back(i * (n + 1), n - m + 1);
  return out;
}

/// E(L) = 1 + sum_{i<m} (1 - i/(n+1)) and Var(L) = sum_{i<m} (i/(n+1))(1 - i/(n+1)).
inline std::pair<Rational, Rational> lucky_mean_variance(std::int64_t m, std::int64_t n) {
  detail::require_m_le_n(m, n);
  if (m == 0) return {0, 0};
  Rational mean = 1;
  Rational var = 0;
  for (std::int64_t i = 1; i < m; ++i) {
    const Rational p(i, n + 1);
    mean += 1 - p;
    var += p * (1 - p);
  }
  return {mean, var};
}

/// R(pi) = #{i : pi_i = pi_{i+1}}.
inline int repeats(std::span<const int> prefs) {
  int r = 0;
  for (std::size_t i = 0; i + 1 < prefs.size(); ++i) r += prefs[i] == prefs[i + 1];
  return r;
}

/// Bitmask of the repeat pattern: bit i set iff w_{i+1} = w_{i+2} (0-based i).
inline std::uint64_t repeat_pattern(std::span<const int> w) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == w[i + 1]) mask |= std::uint64_t{1} << i;
  return mask;
}

using PatternDistribution = std::map<std::uint64_t, Rational>;

/// Exact law of the repeat pattern over uniform PF(m, n) and over uniform words in [n+1]^m.
inline std::pair<PatternDistribution, PatternDistribution> ensemble_pattern_dist(int m, int n,
                                                                                 const Limits& limits = {}) {
  detail::require_m_le_n(m, n);
  if (m > 64) throw InputError("patterns are limited to 64 cars");
  std::map<std::uint64_t, BigInt> pfCounts;
  for_each_parking_function(m, n, [&](const ParkingFunction& pf) { ++pfCounts[repeat_pattern(pf.prefs())]; }, limits);

  detail::require_within(ipow(BigInt(n + 1), static_cast<std::uint64_t>(m)), limits, "enumerating words");
  std::map<std::uint64_t, BigInt> wordCounts;
  std::vector<int> w(static_cast<std::size_t>(m), 1);
  while (true) {
    ++wordCounts[repeat_pattern(w)];
    int i = m - 1;
    while (i >= 0 && w[i] == n + 1) w[i--] = 1;
    if (i < 0) break;
    ++w[i];
  }
  auto normalize = [](const std::map<std::uint64_t, BigInt>& counts) {
    BigInt total = 0;
    for (const auto& [k, c] : counts) total += c;
    PatternDistribution d;
    for (const auto& [k, c] : counts) d[k] = Rational(c, total);
    return d;
  };
  return {normalize(pfCounts), normalize(wordCounts)};
}

/// e^{-c} c^j / j!.
inline double poisson_pmf(double lambda, std::int64_t j) {
  if (j < 0) return 0;
  if (lambda == 0) return j == 0 ? 1.0 : 0.0;
  const double jd = static_cast<double>(j);
  return std::exp(-lambda + jd * std::log(lambda) - std::lgamma(jd + 1));
}

// ---------------------------------------------------------------------------------------------
// Segment profile

/// sqrt(l) [F(x) - x] at x = t / gridSize, t = 0..gridSize, for the segment with l cars, where
/// F(x) = #{cars s of the segment : pi_s - k_i <= l x} / l. Normalizing by the car count l makes
/// F(1) = 1; an empty segment gives all zeros.
inline std::vector<double> excursion_profile(const ParkingFunction& pf, int segmentIndex, int gridSize) {
  if (gridSize < 1) throw InputError("grid needs at least one interval");
  const auto d = segment_decomposition(pf);
  if (segmentIndex < 0 || segmentIndex >= static_cast<int>(d.segments.size()))
    throw InputError("segment index " + std::to_string(segmentIndex) + " out of range");
  const auto& seg = d.segments[static_cast<std::size_t>(segmentIndex)];
  const int l = seg.cars();
  std::vector<double> out(static_cast<std::size_t>(gridSize) + 1, 0.0);
  if (l == 0) return out;
  std::vector<int> cumulative(static_cast<std::size_t>(l) + 1, 0);
  for (int p : seg.prefs()) ++cumulative[p];
  for (int v = 1; v <= l; ++v) cumulative[v] += cumulative[v - 1];
  const double scale = std::sqrt(static_cast<double>(l));
  for (int t = 0; t <= gridSize; ++t) {
    // floor(l t / gridSize) in integers so aligned grid points are exact.
    const auto reach = static_cast<int>((static_cast<std::int64_t>(l) * t) / gridSize);
    const double x = static_cast<double>(t) / gridSize;
    out[static_cast<std::size_t>(t)] = scale * (static_cast<double>(cumulative[reach]) / l - x);
  }
  return out;
}

}  // namespace parkfn
