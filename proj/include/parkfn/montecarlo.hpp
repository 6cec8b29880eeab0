#pragma once

// Monte Carlo checks of the sampler and of the distributional laws. Every check runs through
// run_streams, so a report depends only on (parameters, seed, trials).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "parkfn/counting.hpp"
#include "parkfn/enumerate.hpp"
#include "parkfn/laws.hpp"
#include "parkfn/random.hpp"
#include "parkfn/report.hpp"
#include "parkfn/stats.hpp"

namespace parkfn {

struct Thresholds {
  double significance = 1e-3;  ///< chi-square p-value floor
  double sigmaBand = 3.0;      ///< allowed |z| for mean-type comparisons
  double ksThreshold = 0.02;   ///< normality distance ceiling
};

namespace detail {

inline SampleReport start_report(const std::string& check, std::int64_t m, std::int64_t n, std::uint64_t seed,
                                 std::uint64_t trials) {
  SampleReport r;
  r.config = {{"check", check}, {"m", m}, {"n", n}, {"seed", std::to_string(seed)}, {"trials", std::to_string(trials)}};
  r.seed = seed;
  r.sampleCount = trials;
  r.generator = RandomSource::kAlgorithm;
  r.seedDerivation = seed_derivation_note();
  return r;
}

inline void add_thresholds(SampleReport& r, const Thresholds& t) {
  r.config["thresholds"] = {{"significance", t.significance}, {"sigmaBand", t.sigmaBand}, {"ksThreshold", t.ksThreshold}};
}

template <class T>
void append(std::vector<T>& a, const std::vector<T>& b) {
  a.insert(a.end(), b.begin(), b.end());
}

}  // namespace detail

/// Chi-square test of sample_pf against the uniform law on the enumerated support.
inline SampleReport sampler_chi2_check(int m, int n, std::uint64_t seed, std::uint64_t trials, const Thresholds& thr = {},
                                       unsigned threads = 0, const Limits& limits = {}) {
  auto report = detail::start_report("chi2", m, n, seed, trials);
  detail::add_thresholds(report, thr);
  const auto support = enumerate_pf(m, n, limits);
  // Dense index over base-n codes of the preference words.
  const BigInt cells = ipow(BigInt(std::max(n, 1)), static_cast<std::uint64_t>(m));
  detail::require_within(cells, limits, "sampler index table");
  std::vector<std::int64_t> index(static_cast<std::size_t>(cells), -1);
  auto code = [n](const ParkingFunction& pf) {
    std::size_t c = 0;
    for (int p : pf.prefs()) c = c * static_cast<std::size_t>(n) + static_cast<std::size_t>(p - 1);
    return c;
  };
  for (std::size_t i = 0; i < support.size(); ++i) index[code(support[i])] = static_cast<std::int64_t>(i);

  using Counts = std::vector<std::uint64_t>;
  const auto counts = run_streams<Counts>(
      seed, trials,
      [&](RandomSource& rng, std::uint64_t count) {
        Counts c(support.size(), 0);
        for (std::uint64_t t = 0; t < count; ++t) {
          const auto at = index[code(sample_pf(m, n, rng))];
          if (at < 0) throw Error("sampler produced a non-parking function");
          ++c[static_cast<std::size_t>(at)];
        }
        return c;
      },
      [](Counts& a, const Counts& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
      },
      threads);

  const double p = 1.0 / static_cast<double>(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) report.pmf.push_back({to_text(support[i]), counts[i], p});
  if (trials == 0) return report;
  const std::vector<double> expected(support.size(), p * static_cast<double>(trials));
  const double stat = pearson_statistic(counts, expected);
  const double dof = static_cast<double>(support.size()) - 1;
  const double pvalue = dof > 0 ? chi_square_sf(stat, dof) : 1.0;
  report.statistics = {{"chi2", stat}, {"dof", dof}, {"pvalue", pvalue}};
  report.verdicts.push_back(Verdict::make("chi2_pvalue", pvalue, ">=", thr.significance));
  return report;
}

/// Mean position of each unattempted spot over `trials` samples.
inline std::vector<double> hole_estimator(int m, int n, RandomSource& rng, std::uint64_t trials) {
  std::vector<double> sums(static_cast<std::size_t>(std::max(n - m, 0)), 0.0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto holes = unattempted_spots(sample_pf(m, n, rng));
    for (std::size_t i = 0; i < holes.size(); ++i) sums[i] += holes[i];
  }
  if (trials > 0)
    for (auto& s : sums) s /= static_cast<double>(trials);
  return sums;
}

/// z-scores of the mean hole positions against i (n + 1) / (n - m + 1).
inline SampleReport hole_check(int m, int n, std::uint64_t seed, std::uint64_t trials, const Thresholds& thr = {},
                               unsigned threads = 0) {
  auto report = detail::start_report("holes", m, n, seed, trials);
  detail::add_thresholds(report, thr);
  const auto exact = expected_holes(m, n);
  using Acc = std::vector<Moments>;
  const auto acc = run_streams<Acc>(
      seed, trials,
      [&](RandomSource& rng, std::uint64_t count) {
        Acc a(exact.size());
        for (std::uint64_t t = 0; t < count; ++t) {
          const auto holes = unattempted_spots(sample_pf(m, n, rng));
          for (std::size_t i = 0; i < holes.size(); ++i) a[i].add(holes[i]);
        }
        return a;
      },
      [](Acc& a, const Acc& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i].merge(b[i]);
      },
      threads);
  if (trials < 2 || exact.empty()) return report;
  double worst = 0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const double ref = to_double(exact[i]);
    const double se = acc[i].standard_error();
    const double z = se > 0 ? (acc[i].mean - ref) / se : (acc[i].mean == ref ? 0.0 : INFINITY);
    const auto key = "hole_" + std::to_string(i + 1);
    report.statistics[key + "_mean"] = acc[i].mean;
    report.statistics[key + "_z"] = z;
    report.references[key] = ref;
    worst = std::max(worst, std::abs(z));
  }
  report.statistics["max_abs_z"] = worst;
  report.verdicts.push_back(Verdict::make("max_abs_z", worst, "<=", thr.sigmaBand));
  return report;
}

/// Empirical law of the repeat count R against Poisson(m / n) for R = 0..maxRepeats.
inline SampleReport repeats_check(int m, int n, std::uint64_t seed, std::uint64_t trials, const Thresholds& thr = {},
                                  int maxRepeats = 4, unsigned threads = 0) {
  auto report = detail::start_report("repeats", m, n, seed, trials);
  detail::add_thresholds(report, thr);
  report.config["maxRepeats"] = maxRepeats;
  using Counts = std::vector<std::uint64_t>;
  const auto cells = static_cast<std::size_t>(std::max(m, 1));
  const auto counts = run_streams<Counts>(
      seed, trials,
      [&](RandomSource& rng, std::uint64_t count) {
        Counts c(cells, 0);
        for (std::uint64_t t = 0; t < count; ++t) ++c[static_cast<std::size_t>(repeats(sample_pf(m, n, rng).prefs()))];
        return c;
      },
      [](Counts& a, const Counts& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
      },
      threads);
  const double c = n > 0 ? static_cast<double>(m) / n : 0.0;
  const double q = 1.0 / (n + 1);
  double worst = 0;
  for (int j = 0; j <= maxRepeats; ++j) {
    const std::uint64_t observed = static_cast<std::size_t>(j) < cells ? counts[static_cast<std::size_t>(j)] : 0;
    const double ref = poisson_pmf(c, j);
    report.pmf.push_back({"R=" + std::to_string(j), observed, ref});
    // Exact finite-size law: the pattern law equals that of a uniform word, so R ~ Binomial(m - 1, 1/(n+1)).
    const double exactBinomial = m >= 1 && j <= m - 1
                                     ? std::exp(std::lgamma(m) - std::lgamma(j + 1) - std::lgamma(m - j) +
                                                j * std::log(q) + (m - 1 - j) * std::log1p(-q))
                                     : 0.0;
    report.references["binomial_" + std::to_string(j)] = exactBinomial;
    report.references["poisson_" + std::to_string(j)] = ref;
    if (trials == 0) continue;
    const double phat = static_cast<double>(observed) / static_cast<double>(trials);
    const double se = std::sqrt(ref * (1 - ref) / static_cast<double>(trials));
    const double z = se > 0 ? (phat - ref) / se : (phat == ref ? 0.0 : INFINITY);
    report.statistics["p_" + std::to_string(j)] = phat;
    report.statistics["z_" + std::to_string(j)] = z;
    worst = std::max(worst, std::abs(z));
  }
  if (trials == 0) return report;
  report.statistics["max_abs_z"] = worst;
  report.verdicts.push_back(Verdict::make("max_abs_z", worst, "<=", thr.sigmaBand));
  return report;
}

/// Normality of the standardized lucky-car count. The verdict statistic is the largest distance
/// |F_emp(Phi^{-1}(p)) - p| over the deciles p = 0.1..0.9. The sup distance over all points and a
/// midpoint version are reported for information: L is integer valued, so the sup distance keeps a
/// lattice term of order 1/sd(L) that does not vanish with more samples.
inline SampleReport lucky_clt_check(int m, int n, std::uint64_t seed, std::uint64_t trials, const Thresholds& thr = {},
                                    unsigned threads = 0) {
  auto report = detail::start_report("lucky", m, n, seed, trials);
  detail::add_thresholds(report, thr);
  const auto [meanR, varR] = lucky_mean_variance(m, n);
  const double mean = to_double(meanR);
  const double var = to_double(varR);
  report.references["mean"] = mean;
  report.references["variance"] = var;
  if (trials == 0) return report;
  if (var <= 0) throw DomainError("lucky-car count is degenerate for these parameters");
  using Samples = std::vector<int>;
  const auto counts = run_streams<Samples>(
      seed, trials,
      [&](RandomSource& rng, std::uint64_t count) {
        Samples s;
        s.reserve(count);
        for (std::uint64_t t = 0; t < count; ++t) s.push_back(lucky_count(sample_pf(m, n, rng)));
        return s;
      },
      detail::append<int>, threads);
  const double sd = std::sqrt(var);
  std::vector<double> z;
  z.reserve(counts.size());
  Moments mom;
  for (int l : counts) {
    z.push_back((l - mean) / sd);
    mom.add(l);
  }
  std::sort(z.begin(), z.end());
  const double decile = decile_distance_normal(z);
  double midpoint = 0;
  for (std::size_t i = 0; i < z.size();) {
    std::size_t j = i;
    while (j < z.size() && z[j] == z[i]) ++j;
    const double f = (static_cast<double>(i) + static_cast<double>(j)) / 2 / static_cast<double>(z.size());
    midpoint = std::max(midpoint, std::abs(f - normal_cdf(z[i])));
    i = j;
  }
  report.statistics = {{"decile_distance", decile},
                       {"ks_sup", ks_distance_normal(z)},
                       {"ks_midpoint", midpoint},
                       {"sample_mean", mom.mean},
                       {"sample_variance", mom.variance()}};
  for (int l = *std::min_element(counts.begin(), counts.end()); l <= *std::max_element(counts.begin(), counts.end()); ++l) {
    const auto observed = static_cast<std::uint64_t>(std::count(counts.begin(), counts.end(), l));
    report.pmf.push_back({"L=" + std::to_string(l), observed,
                          normal_cdf((l + 0.5 - mean) / sd) - normal_cdf((l - 0.5 - mean) / sd)});
  }
  report.verdicts.push_back(Verdict::make("decile_distance", decile, "<", thr.ksThreshold));
  return report;
}

/// Var(pi_1) and Cov(pi_1, pi_2) over uniform PF(n, n) against n^2/12 + (4 - 3 pi) n / 24 and
/// (8 - 3 pi) n / 24 + (208 - 57 pi) / 144. Standard errors use the sample fourth moments.
inline SampleReport covariance_check(int n, std::uint64_t seed, std::uint64_t trials, const Thresholds& thr = {},
                                     unsigned threads = 0) {
  auto report = detail::start_report("covariance", n, n, seed, trials);
  detail::add_thresholds(report, thr);
  if (n < 2) throw InputError("covariance_check needs n >= 2");
  const auto [varRef, covRef] = covariance_asymptotic(n);
  const double nd = static_cast<double>(n);
  report.references = {{"var_first", varRef}, {"cov_first_second", covRef}, {"var_first_leading", nd * nd / 12}};
  if (trials < 2) return report;
  using Pairs = std::vector<std::pair<int, int>>;
  const auto pairs = run_streams<Pairs>(
      seed, trials,
      [&](RandomSource& rng, std::uint64_t count) {
        Pairs p;
        p.reserve(count);
        for (std::uint64_t t = 0; t < count; ++t) {
          const auto pf = sample_pf(n, n, rng);
          p.emplace_back(pf.pref(1), pf.pref(2));
        }
        return p;
      },
      detail::append<std::pair<int, int>>, threads);
  const double size = static_cast<double>(pairs.size());
  double ma = 0, mb = 0;
  for (const auto& [a, b] : pairs) {
    ma += a;
    mb += b;
  }
  ma /= size;
  mb /= size;
  double var = 0, cov = 0;
  for (const auto& [a, b] : pairs) {
    var += (a - ma) * (a - ma);
    cov += (a - ma) * (b - mb);
  }
  var /= size - 1;
  cov /= size - 1;
  Moments sq;
  Moments cross;
  for (const auto& [a, b] : pairs) {
    sq.add((a - ma) * (a - ma));
    cross.add((a - ma) * (b - mb));
  }
  const double seVar = sq.standard_error();
  const double seCov = cross.standard_error();
  const double zVar = (var - varRef) / seVar;
  const double zCov = (cov - covRef) / seCov;
  report.statistics = {{"var_first", var},
                       {"cov_first_second", cov},
                       {"se_var_first", seVar},
                       {"se_cov_first_second", seCov},
                       {"z_var_first", zVar},
                       {"z_cov_first_second", zCov},
                       {"z_var_first_leading", (var - nd * nd / 12) / seVar}};
  report.verdicts.push_back(Verdict::make("abs_z_var_first", std::abs(zVar), "<=", thr.sigmaBand));
  report.verdicts.push_back(Verdict::make("abs_z_cov_first_second", std::abs(zCov), "<=", thr.sigmaBand));
  return report;
}

}  // namespace parkfn
