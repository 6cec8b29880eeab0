#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "parkfn/parkfn.hpp"

using namespace parkfn;

TEST(Stats, DistributionFunctions) {
  EXPECT_NEAR(chi_square_sf(2.0, 2.0), std::exp(-1.0), 1e-14);
  EXPECT_DOUBLE_EQ(chi_square_sf(0.0, 3.0), 1.0);
  EXPECT_NEAR(normal_cdf(0), 0.5, 1e-15);
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-12);
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-12);
  EXPECT_THROW(normal_quantile(1.0), InputError);
  const std::vector<std::uint64_t> observed{10, 20, 30};
  const std::vector<double> expected{20, 20, 20};
  EXPECT_DOUBLE_EQ(pearson_statistic(observed, expected), 10.0);
}

TEST(Stats, DistancesToNormal) {
  // Exact normal quantiles at the midpoints of n equal cells: sup distance is 1/(2n).
  std::vector<double> z;
  for (int i = 0; i < 1000; ++i) z.push_back(normal_quantile((i + 0.5) / 1000));
  EXPECT_NEAR(ks_distance_normal(z), 0.0005, 1e-9);
  EXPECT_LE(decile_distance_normal(z), 0.0005 + 1e-12);
  const std::vector<double> shifted(1000, 0.0);
  EXPECT_NEAR(ks_distance_normal(shifted), 0.5, 1e-12);
  EXPECT_NEAR(decile_distance_normal(shifted), 0.5, 1e-12);
}

TEST(Stats, MomentsMerge) {
  Moments a, b, all;
  for (int i = 0; i < 10; ++i) {
    (i < 4 ? a : b).add(i * i);
    all.add(i * i);
  }
  a.merge(b);
  EXPECT_EQ(a.count, 10U);
  EXPECT_NEAR(a.mean, all.mean, 1e-12);
  EXPECT_NEAR(a.variance(), all.variance(), 1e-9);
}

TEST(Report, VerdictsAreRecomputable) {
  const auto r = sampler_chi2_check(3, 5, 7, 20000);
  EXPECT_EQ(r.pmf.size(), 108U);
  const auto j = r.to_json();
  for (const auto& v : j["verdicts"])
    EXPECT_EQ(v["passed"].get<bool>(),
              Verdict::evaluate(v["statistic"].get<double>(), v["comparison"].get<std::string>(), v["threshold"].get<double>()));
  EXPECT_EQ(j["seed"], "7");
  EXPECT_EQ(j["config"]["m"], 3);
  EXPECT_EQ(j["sampleCount"], "20000");
  std::uint64_t total = 0;
  for (const auto& row : r.pmf) total += row.observed;
  EXPECT_EQ(total, 20000U);
  const auto csv = r.to_csv();
  EXPECT_EQ(csv.rfind("label,observed,reference_probability,expected_count\n", 0), 0U);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 109);
  EXPECT_THROW(Verdict::evaluate(1, "==", 1), InputError);
}

TEST(Report, DeterministicAcrossThreadCounts) {
  const auto a = hole_check(20, 30, 5, 3000, {}, 1);
  const auto b = hole_check(20, 30, 5, 3000, {}, 4);
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
  const auto c = repeats_check(20, 40, 5, 3000, {}, 4, 1);
  const auto d = repeats_check(20, 40, 5, 3000, {}, 4, 3);
  EXPECT_EQ(c.to_json().dump(), d.to_json().dump());
  EXPECT_NE(hole_check(20, 30, 6, 3000).to_json().dump(), a.to_json().dump());
}

TEST(Report, SmallMonteCarloChecks) {
  EXPECT_TRUE(sampler_chi2_check(2, 4, 11, 50000).passed());
  const auto holes = hole_check(5, 8, 12, 20000);
  EXPECT_TRUE(holes.passed());
  EXPECT_EQ(holes.references.at("hole_1"), 9.0 / 4);
  const auto lucky = lucky_clt_check(4, 6, 13, 0);
  EXPECT_TRUE(lucky.verdicts.empty());
  EXPECT_NEAR(lucky.references.at("mean"), to_double(lucky_mean_variance(4, 6).first), 1e-12);
  const auto cov = covariance_check(30, 14, 20000);
  EXPECT_EQ(cov.verdicts.size(), 2U);
  EXPECT_THROW(covariance_check(1, 1, 10), InputError);
  RandomSource rng(4);
  const auto means = hole_estimator(3, 5, rng, 20000);
  ASSERT_EQ(means.size(), 2U);
  EXPECT_NEAR(means[0], 2, 0.05);
  EXPECT_NEAR(means[1], 4, 0.05);
}

TEST(Verify, SuitesPassAtDefaultSizes) {
  for (const auto& [name, fn] : verify_suites()) {
    VerifyOptions o;
    o.trials = 20000;
    if (name == "coordinate") o.n = 20;
    const auto r = run_verify(name, o);
    EXPECT_TRUE(r.passed()) << name << ": " << r.to_json().dump();
    EXPECT_FALSE(r.checks.empty()) << name;
  }
  EXPECT_THROW(run_verify("nope"), InputError);
}

TEST(Verify, RecordsFirstCounterexample) {
  VerifyResult r;
  r.suite = "demo";
  r.open("a");
  r.open("b");
  r.fail("b", "1 1 : 1");
  r.fail("a", "2 2 : 2 2");
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.counterexample, "1 1 : 1");
  EXPECT_EQ(r.to_json()["checks"][1]["detail"], "1 1 : 1");
  EXPECT_EQ(detail::abel_failures(4, Rational(3, 2), Rational(5, 7), 1, -2).size(), 0U);
}
