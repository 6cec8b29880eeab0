#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "parkfn/counting.hpp"
#include "parkfn/enumerate.hpp"
#include "parkfn/laws.hpp"
#include "parkfn/shuffle.hpp"

using namespace parkfn;

namespace {

// Brute-force expectation of f over PF(m, n).
template <class F>
Rational average(int m, int n, F f) {
  Rational sum = 0;
  std::int64_t count = 0;
  for (const auto& pf : enumerate_pf(m, n)) {
    sum += f(pf);
    ++count;
  }
  return sum / count;
}

}  // namespace

TEST(FirstCoordinate, SmallLaws) {
  EXPECT_EQ(pmf_first_coordinate(2, 2), (std::vector<Rational>{Rational(2, 3), Rational(1, 3)}));
  EXPECT_EQ(pmf_first_coordinate(2, 3), (std::vector<Rational>{Rational(3, 8), Rational(3, 8), Rational(2, 8)}));
  EXPECT_EQ(pmf_first_coordinate(1, 4), std::vector<Rational>(4, Rational(1, 4)));
  EXPECT_THROW(pmf_first_coordinate(0, 3), InputError);
  for (int n = 1; n <= 5; ++n)
    for (int m = 1; m <= n; ++m) {
      const auto pmf = pmf_first_coordinate(m, n);
      Rational total = 0;
      for (int j = 1; j <= n; ++j) {
        ASSERT_EQ(pmf[j - 1], average(m, n, [j](const ParkingFunction& pf) { return Rational(pf.pref(1) == j); }));
        total += pmf[j - 1];
      }
      ASSERT_EQ(total, 1);
    }
}

TEST(FirstCoordinate, ComponentWeights) {
  for (int n = 1; n <= 5; ++n)
    for (int m = 1; m <= n; ++m) {
      // Joint law of (pi_1, k) where the tail admits exactly [k] as first preferences.
      std::map<std::pair<int, int>, Rational> joint;
      const auto total = count_pf(m, n);
      for (const auto& pf : enumerate_pf(m, n)) {
        const std::vector<int> rest(pf.prefs().begin() + 1, pf.prefs().end());
        joint[{pf.pref(1), *max_first_preference(rest, n)}] += Rational(1) / Rational(total);
      }
      for (int k = 1; k <= n; ++k)
        for (int j = 1; j <= n; ++j) {
          const Rational expected = j <= k ? component_weight(m, n, k) : Rational(0);
          ASSERT_EQ(joint[std::make_pair(j, k)], expected) << m << " " << n << " " << j << " " << k;
        }
      const auto pmf = pmf_first_coordinate(m, n);
      for (int j = 1; j <= n; ++j) {
        Rational sum = 0;
        for (int k = std::max(j, n - m + 1); k <= n; ++k) sum += component_weight(m, n, k);
        ASSERT_EQ(pmf[j - 1], sum);
      }
    }
}

TEST(FirstCoordinate, PlateauAndRightEnd) {
  for (int n = 1; n <= 30; ++n)
    for (int m = 1; m <= n; ++m) {
      const auto pmf = pmf_first_coordinate(m, n);
      const Rational plateau(n - m + 2, static_cast<std::int64_t>(n - m + 1) * (n + 1));
      for (int j = 1; j <= n - m + 1; ++j) ASSERT_EQ(pmf[j - 1], plateau) << m << " " << n;
      ASSERT_EQ(pmf[n - 1], rpow(n, m - 2) / rpow(n + 1, m - 1));
      for (int j = n - m + 2; j <= n; ++j) ASSERT_LE(pmf[j - 1], pmf[j - 2]);
    }
}

TEST(FirstCoordinate, Moments) {
  EXPECT_EQ(moment_first(2, 2, 1), Rational(4, 3));
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(moment_first(1, n, 1), Rational(n + 1, 2));
  EXPECT_EQ(moment_first(3, 4, 2),
            average(3, 4, [](const ParkingFunction& pf) { return Rational(pf.pref(1) * pf.pref(1)); }));
  // The asymptotic form is a two-term expansion: at c = 1/2 its relative error falls like 1/n^2.
  double previous = 1;
  for (int n : {40, 80, 160}) {
    const double exact = to_double(moment_first(n / 2, n, 1));
    const double rel = std::abs(exact / moment_first_asymptotic(n / 2, n, 1) - 1);
    EXPECT_LT(rel, previous / 3);
    previous = rel;
  }
  EXPECT_NEAR(to_double(moment_first(100, 100, 1)) / moment_first_asymptotic(100, 100, 1), 1, 0.01);
  EXPECT_NEAR(to_double(moment_first(100, 100, 2)) / moment_first_asymptotic(100, 100, 2), 1, 0.01);
  EXPECT_THROW(moment_first_asymptotic(5, 5, 3), DomainError);
}

TEST(FirstCoordinate, DisplacementFromMeanPreference) {
  for (int n = 1; n <= 6; ++n)
    for (int m = 1; m <= n; ++m) {
      const Rational viaMean = Rational(n * (n + 1), 2) - m * moment_first(m, n, 1) - Rational((n + 1) * (n - m), 2);
      ASSERT_EQ(viaMean, average(m, n, [](const ParkingFunction& pf) { return Rational(displacement(pf)); }));
    }
}

TEST(Borel, PmfAndTail) {
  EXPECT_DOUBLE_EQ(borel_pmf(0.3, 1), std::exp(-0.3));
  EXPECT_DOUBLE_EQ(borel_pmf(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(borel_pmf(0, 2), 0.0);
  EXPECT_NEAR(borel_pmf(1, 2), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(borel_sum_from(0.5, 1), 1, 1e-9);
  EXPECT_NEAR(borel_sum_from(0.9, 1), 1, 1e-9);
  EXPECT_DOUBLE_EQ(borel_tail(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(borel_tail(0.5, 0), 1.0);
  for (int j = 2; j <= 8; ++j) {
    double head = 0;
    for (int i = 1; i < j; ++i) head += borel_pmf(0.7, i);
    EXPECT_NEAR(borel_tail(0.7, j), 1 - head, 1e-12);
  }
  EXPECT_GT(borel_tail(1, 100), 0.05);
  EXPECT_THROW(borel_pmf(1.5, 1), InputError);
}

TEST(Borel, BoundaryApproximations) {
  const auto pmf = pmf_first_coordinate(80, 100);
  const auto right = boundary_laws(80, 100, 0);
  EXPECT_NEAR(100 * to_double(pmf[99]) / (100 * right.rightEnd), 1, 0.05);
  EXPECT_NEAR(right.rightEnd, right.rightTail, 1e-15);
  EXPECT_NEAR(to_double(pmf[0]) / right.plateau, 1, 0.05);
  EXPECT_EQ(pmf[0] * 21 * 101 / 22, 1);
  // Per-k weights near the right end follow the Borel pmf at j + 1.
  const auto big = boundary_laws(400, 500, 2);
  EXPECT_NEAR(to_double(component_weight(400, 500, 498)) / big.rightComponent, 1, 0.05);
  // Ratio form on the left: P(A = [n - m + 1 + i]) / P(A = [n - m + 1]) against lambda^i / i!.
  // The relative error is of order i^2 / n.
  auto left_error = [](int m, int n, int i) {
    const int a = n - m + 1;
    const double ratio = to_double(component_weight(m, n, a + i) / component_weight(m, n, a));
    return ratio / boundary_laws(m, n, i).leftComponentRatio - 1;
  };
  EXPECT_LT(std::abs(left_error(400, 500, 1)), 0.05);
  EXPECT_LT(std::abs(left_error(400, 500, 2)), 0.05);
  EXPECT_LT(std::abs(left_error(800, 1000, 3)), 0.55 * std::abs(left_error(400, 500, 3)));
}

TEST(Displacement, QFunction) {
  EXPECT_EQ(ramanujan_q(3), Rational(17, 9));
  EXPECT_EQ(q_function(0, 3, 2), Rational(17, 9));
  EXPECT_EQ(q_function(2, 7, 0), 1);
  EXPECT_EQ(q_function(1, 2, 2), 1 + Rational(2 * 2, 2) + Rational(3 * 2, 4));
  EXPECT_NEAR(to_double(q_function(0, 101, 100)) / std::sqrt(std::numbers::pi * 100 / 2), 1, 0.1);
  EXPECT_THROW(q_function(0, 0, 2), InputError);
}

TEST(Displacement, ExactMoments) {
  const auto d22 = disp_moments_exact(2, 2);
  EXPECT_EQ(d22.mean, Rational(1, 3));
  EXPECT_EQ(d22.secondMoment, Rational(1, 3));
  EXPECT_EQ(disp_moments_exact(0, 4).mean, 0);
  EXPECT_EQ(disp_moments_exact(2, 3).mean, Rational(1, 4));
  for (int n = 1; n <= 5; ++n)
    for (int m = 0; m <= n; ++m) {
      const auto d = disp_moments_exact(m, n);
      ASSERT_EQ(d.mean, average(m, n, [](const ParkingFunction& pf) { return Rational(displacement(pf)); }));
      ASSERT_EQ(d.secondMoment, average(m, n, [](const ParkingFunction& pf) {
                  const auto v = displacement(pf);
                  return Rational(v * v);
                }));
    }
}

TEST(Displacement, CovarianceDecomposition) {
  const auto c2 = covariance_exact(2);
  EXPECT_EQ(c2.varFirst, Rational(2, 9));
  EXPECT_EQ(c2.covFirstTwo, Rational(-1, 9));
  EXPECT_EQ(c2.varDisp, Rational(2, 9));
  const auto c1 = covariance_exact(1);
  EXPECT_EQ(c1.varFirst, 0);
  EXPECT_EQ(c1.covFirstTwo, 0);
  EXPECT_EQ(c1.varDisp, 0);
  for (int n = 1; n <= 6; ++n) {
    const auto c = covariance_exact(n);
    ASSERT_EQ(c.varDisp, c.decomposition) << n;
    ASSERT_EQ(c.varDisp, disp_moments_exact(n, n).variance());
  }
  EXPECT_THROW(covariance_exact(6, Limits{1000}), ResourceLimit);
}

TEST(Holes, ExpectedPositions) {
  EXPECT_EQ(expected_holes(1, 2), (std::vector<Rational>{Rational(3, 2)}));
  EXPECT_EQ(expected_holes(3, 5), (std::vector<Rational>{2, 4}));
  EXPECT_EQ(expected_holes(4, 7).size(), 3U);
  EXPECT_TRUE(expected_holes(4, 4).empty());
  for (int n = 1; n <= 5; ++n)
    for (int m = 0; m < n; ++m) {
      const auto exact = expected_holes(m, n);
      for (std::size_t i = 0; i < exact.size(); ++i)
        ASSERT_EQ(exact[i], average(m, n, [i](const ParkingFunction& pf) { return Rational(unattempted_spots(pf)[i]); }));
    }
}

TEST(Lucky, MeanAndVariance) {
  EXPECT_EQ(lucky_mean_variance(2, 2).first, Rational(5, 3));
  for (int n = 1; n <= 5; ++n)
    for (int m = 1; m <= n; ++m) {
      const auto [mean, var] = lucky_mean_variance(m, n);
      ASSERT_EQ(mean, average(m, n, [](const ParkingFunction& pf) { return Rational(lucky_count(pf)); }));
      const auto second = average(m, n, [](const ParkingFunction& pf) { return Rational(lucky_count(pf) * lucky_count(pf)); });
      ASSERT_EQ(var, second - mean * mean);
    }
}

TEST(Ensembles, RepeatPatterns) {
  const auto [pf22, words22] = ensemble_pattern_dist(2, 2);
  EXPECT_EQ(pf22.at(1), Rational(1, 3));
  EXPECT_EQ(words22.at(1), Rational(1, 3));
  const auto [pf1, words1] = ensemble_pattern_dist(1, 5);
  EXPECT_EQ(pf1, words1);
  EXPECT_EQ(pf1.size(), 1U);
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= n; ++m) {
      const auto [a, b] = ensemble_pattern_dist(m, n);
      ASSERT_EQ(a, b) << m << " " << n;
    }
  EXPECT_EQ(repeats(std::vector<int>{1, 1, 2, 2, 2, 3}), 3);
  EXPECT_NEAR(poisson_pmf(0.5, 0), std::exp(-0.5), 1e-15);
  EXPECT_NEAR(poisson_pmf(0.5, 2), std::exp(-0.5) / 8, 1e-15);
}

TEST(Excursion, ProfileShape) {
  // Holes 5 and 10 on 12 spots; the middle segment (spots 6..9) holds cars preferring 6, 7, 7, 9.
  const ParkingFunction pf({6, 1, 7, 2, 7, 3, 9, 11, 1, 12}, 12);
  const auto d = segment_decomposition(pf);
  ASSERT_EQ(d.holes, (std::vector<int>{5, 10}));
  const auto profile = excursion_profile(pf, 1, 4);
  ASSERT_EQ(profile.size(), 5U);
  EXPECT_DOUBLE_EQ(profile[0], 0.0);
  EXPECT_NEAR(profile[1], 2 * (0.25 - 0.25), 1e-12);
  EXPECT_NEAR(profile[2], 2 * (0.75 - 0.5), 1e-12);
  EXPECT_NEAR(profile[3], 2 * (0.75 - 0.75), 1e-12);
  EXPECT_NEAR(profile[4], 0.0, 1e-12);

  const ParkingFunction gap({1, 1}, 3);  // holes {3}: last segment is empty
  EXPECT_EQ(excursion_profile(gap, 1, 5), std::vector<double>(6, 0.0));
  EXPECT_THROW(excursion_profile(gap, 2, 5), InputError);

  // On the lattice x = t / l the profile is the prefix inequality of a classical pf, so it is
  // nonnegative there; between lattice points it can dip below zero.
  for (int n = 1; n <= 5; ++n)
    for (int m = 1; m <= n; ++m)
      for (const auto& p : enumerate_pf(m, n)) {
        const auto dec = segment_decomposition(p);
        for (std::size_t i = 0; i < dec.segments.size(); ++i) {
          const int l = dec.segments[i].cars();
          const auto prof = excursion_profile(p, static_cast<int>(i), std::max(l, 1));
          for (double v : prof) ASSERT_GE(v, -1e-12) << to_text(p);
          ASSERT_NEAR(prof.back(), 0.0, 1e-12);
        }
      }
}
