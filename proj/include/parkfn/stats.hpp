#pragma once

// Distribution functions and goodness-of-fit statistics used by the Monte Carlo checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "parkfn/errors.hpp"

namespace parkfn {

/// P(chi^2_dof >= statistic).
inline double chi_square_sf(double statistic, double dof) {
  if (dof <= 0) throw InputError("chi-square needs positive degrees of freedom");
  if (statistic <= 0) return 1.0;
  return boost::math::gamma_q(dof / 2, statistic / 2);
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

inline double normal_quantile(double p) {
  if (!(p > 0 && p < 1)) throw InputError("normal quantile needs p in (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

/// Pearson statistic sum (O - E)^2 / E over cells with E > 0.
inline double pearson_statistic(std::span<const std::uint64_t> observed, std::span<const double> expectedCounts) {
  if (observed.size() != expectedCounts.size()) throw InputError("observed and expected cell counts differ in length");
  double stat = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expectedCounts[i] <= 0) continue;
    const double d = static_cast<double>(observed[i]) - expectedCounts[i];
    stat += d * d / expectedCounts[i];
  }
  return stat;
}

/// Empirical distribution of sorted samples, evaluated as #{x <= t} / size.
inline double empirical_cdf(std::span<const double> sorted, double t) {
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), t);
  return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

/// sup_t |F_emp(t) - Phi(t)| over sorted samples (both one-sided limits at every jump).
inline double ks_distance_normal(std::span<const double> sorted) {
  const auto size = static_cast<double>(sorted.size());
  double d = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double phi = normal_cdf(sorted[i]);
    d = std::max({d, std::abs(static_cast<double>(i) / size - phi), std::abs(static_cast<double>(j) / size - phi)});
    i = j;
  }
  return d;
}

/// max over p = 0.1, ..., 0.9 of |F_emp(Phi^{-1}(p)) - p|.
inline double decile_distance_normal(std::span<const double> sorted) {
  double d = 0;
  for (int k = 1; k <= 9; ++k) {
    const double p = k / 10.0;
    d = std::max(d, std::abs(empirical_cdf(sorted, normal_quantile(p)) - p));
  }
  return d;
}

/// Running mean and central moments (Welford), mergeable across streams.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0;
  double m2 = 0;

  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(count + o.count);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.count) / total;
    m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) / total;
    count += o.count;
  }
  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double standard_error() const { return count > 1 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0; }
};

}  // namespace parkfn
