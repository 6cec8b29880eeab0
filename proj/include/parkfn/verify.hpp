#pragma once

// Named verification suites. Each runs an identity or roundtrip over all small cases and records
// one result per assertion group, plus the first counterexample in canonical text form.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "parkfn/counting.hpp"
#include "parkfn/enumerate.hpp"
#include "parkfn/forest.hpp"
#include "parkfn/knuth.hpp"
#include "parkfn/laws.hpp"
#include "parkfn/montecarlo.hpp"
#include "parkfn/shuffle.hpp"
#include "parkfn/tutte.hpp"

namespace parkfn {

struct VerifyOptions {
  std::optional<int> maxSize;  ///< suite-specific size bound; each suite has its own default
  std::optional<int> n;        ///< secondary bound (Tutte size, Abel n, exact-law range)
  std::uint64_t seed = 1;
  std::uint64_t trials = 1'000'000;
  Limits limits;
};

struct VerifyCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct VerifyResult {
  std::string suite;
  std::vector<VerifyCheck> checks;
  std::optional<std::string> counterexample;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  /// Records a failed assertion under `name`; keeps only the first counterexample.
  void fail(const std::string& name, const std::string& example) {
    for (auto& c : checks)
      if (c.name == name) {
        if (c.passed) c.detail = example;
        c.passed = false;
      }
    if (!counterexample) counterexample = example;
  }

  VerifyCheck& open(const std::string& name) {
    checks.push_back({name, true, ""});
    return checks.back();
  }

  nlohmann::json to_json() const {
    auto arr = nlohmann::json::array();
    for (const auto& c : checks) arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    nlohmann::json j{{"kind", "verify"}, {"version", kVersion}, {"suite", suite}, {"checks", arr}, {"passed", passed()}};
    j["counterexample"] = counterexample ? nlohmann::json(*counterexample) : nlohmann::json(nullptr);
    return j;
  }
};

namespace detail {

inline std::string pair_text(std::int64_t a, std::int64_t b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

// All (m, s) with s >= 1 and m + s <= total.
inline std::vector<std::pair<int, int>> forest_shapes(int total) {
  std::vector<std::pair<int, int>> out;
  for (int t = 1; t <= total; ++t)
    for (int s = 1; s <= t; ++s) out.emplace_back(t - s, s);
  return out;
}

inline void verify_counting(const VerifyOptions& o, VerifyResult& r) {
  const int maxN = o.maxSize.value_or(6);
  r.open("closed form = recursion = enumeration, m <= n <= " + std::to_string(maxN));
  for (int n = 0; n <= maxN; ++n)
    for (int m = 0; m <= n; ++m) {
      const auto closed = count_pf(m, n);
      if (closed != count_pf_recursive(m, n) || BigInt(enumerate_pf(m, n, o.limits).size()) != closed)
        r.fail(r.checks.back().name, "count " + pair_text(m, n));
    }
}

inline void verify_bijections(const VerifyOptions& o, VerifyResult& r) {
  const int total = o.maxSize.value_or(6);
  for (auto [version, label] : {std::pair{BfsVersion::LevelOrder, "bfs1"}, std::pair{BfsVersion::TreeByTree, "bfs2"}}) {
    const std::string name = std::string(label) + " roundtrips, m + s <= " + std::to_string(total);
    r.open(name);
    for (auto [m, s] : forest_shapes(total)) {
      for_each_parking_function(
          m, m + s - 1,
          [&](const ParkingFunction& pf) {
            if (forest_to_pf(pf_to_forest(pf, version), version) != pf) r.fail(name, to_text(pf));
          },
          o.limits);
      for_each_forest(
          m, s,
          [&](const RootedForest& f) {
            if (pf_to_forest(forest_to_pf(f, version), version) != f) r.fail(name, to_text(f));
          },
          o.limits);
    }
  }
}

inline void verify_knuth(const VerifyOptions& o, VerifyResult& r) {
  const int total = o.maxSize.value_or(6);
  const std::string round = "knuth roundtrips, m + s <= " + std::to_string(total);
  const std::string carry = "inversions(knuth(pf)) = disp(pf), m + s <= " + std::to_string(total);
  r.open(round);
  r.open(carry);
  for (auto [m, s] : forest_shapes(total)) {
    for_each_parking_function(
        m, m + s - 1,
        [&](const ParkingFunction& pf) {
          const auto f = pf_to_forest_knuth(pf);
          if (forest_to_pf_knuth(f) != pf) r.fail(round, to_text(pf));
          if (inversions(f) != displacement(pf)) r.fail(carry, to_text(pf));
        },
        o.limits);
    for_each_forest(
        m, s,
        [&](const RootedForest& f) {
          if (pf_to_forest_knuth(forest_to_pf_knuth(f)) != f) r.fail(round, to_text(f));
        },
        o.limits);
  }
}

inline void verify_disp_inv(const VerifyOptions& o, VerifyResult& r) {
  const int total = o.maxSize.value_or(6);
  const std::string name = "D_{m,s} = I_{m,s}, m + s <= " + std::to_string(total);
  const std::string brute = "D_{m,s} = brute-force displacement sum, m + s <= " + std::to_string(total);
  r.open(name);
  r.open(brute);
  for (auto [m, s] : forest_shapes(total)) {
    const auto d = disp_enumerator(m, s);
    if (d != inv_enumerator(m, s, o.limits)) r.fail(name, "D/I " + pair_text(m, s) + " " + d.to_string());
    std::vector<BigInt> coeffs;
    for_each_parking_function(
        m, m + s - 1,
        [&](const ParkingFunction& pf) {
          const auto k = static_cast<std::size_t>(displacement(pf));
          if (coeffs.size() <= k) coeffs.resize(k + 1);
          ++coeffs[k];
        },
        o.limits);
    if (d != UnivariatePolynomial(coeffs)) r.fail(brute, "D " + pair_text(m, s) + " " + d.to_string());
  }
}

inline void verify_tutte(const VerifyOptions& o, VerifyResult& r) {
  const int maxN = o.n.value_or(o.maxSize.value_or(4));
  const std::string name = "tutte_from_pf(k) = T_{K_{k+1}}, k <= " + std::to_string(maxN);
  r.open(name);
  for (int k = 0; k <= maxN; ++k)
    if (tutte_from_pf(k, o.limits) != tutte_complete(k)) r.fail(name, "n=" + std::to_string(k));
}

inline void verify_forest_tutte(const VerifyOptions& o, VerifyResult& r) {
  const int total = o.maxSize.value_or(6);
  const std::string name = "forest Tutte identity, m + s <= " + std::to_string(total);
  r.open(name);
  for (auto [m, s] : forest_shapes(total)) {
    const auto [left, right] = forest_tutte_identity(m, s, o.limits);
    if (left != right) r.fail(name, pair_text(m, s) + " " + left.to_string() + " vs " + right.to_string());
  }
}

inline void verify_graphs(const VerifyOptions& o, VerifyResult& r) {
  const int total = o.maxSize.value_or(5);
  const std::string name = "graph component counts = sum C(disp, k), m + s <= " + std::to_string(total);
  r.open(name);
  for (auto [m, s] : forest_shapes(total)) {
    std::vector<std::int64_t> disps;
    for_each_parking_function(m, m + s - 1, [&](const ParkingFunction& pf) { disps.push_back(displacement(pf)); }, o.limits);
    const auto maxDisp = *std::max_element(disps.begin(), disps.end());
    for (int k = 0; k <= maxDisp + 1; ++k) {
      BigInt expected = 0;
      for (auto d : disps) expected += binomial(d, k);
      if (graph_count_components(m, s, k, o.limits) != expected)
        r.fail(name, "m=" + std::to_string(m) + " s=" + std::to_string(s) + " k=" + std::to_string(k));
    }
  }
}

/// The six Abel identities at (n, x, y, p, q); returns the names of those that fail.
inline std::vector<std::string> abel_failures(std::int64_t n, const Rational& x, const Rational& y, std::int64_t p,
                                              std::int64_t q) {
  std::vector<std::string> bad;
  const Rational a = abel_A(n, x, y, p, q);
  if (a != abel_A(n, y, x, q, p)) bad.push_back("symmetry");
  if (n >= 1 && a != abel_A(n - 1, x, y + 1, p, q + 1) + abel_A(n - 1, x + 1, y, p + 1, q)) bad.push_back("step");
  Rational sum = 0;
  for (std::int64_t s = 0; s <= n; ++s) sum += Rational(binomial(n, s) * factorial(s)) * (x + s) * abel_A(n - s, x + s, y, p - 1, q);
  if (a != sum) bad.push_back("lowering");
  const Rational base = x + y + n;
  if (abel_A(n, x, y, -1, -1) != (1 / x + 1 / y) * rpow(base, n - 1)) bad.push_back("(-1,-1)");
  if (abel_A(n, x, y, -1, 0) != rpow(base, n) / x) bad.push_back("(-1,0)");
  Rational three = 0;
  for (std::int64_t s = 0; s <= n; ++s) three += Rational(binomial(n, s)) * rpow(base, s) * (y + n - s) * Rational(factorial(n - s));
  if (abel_A(n, x, y, -1, 1) != three / x) bad.push_back("(-1,1)");
  return bad;
}

inline void verify_abel(const VerifyOptions& o, VerifyResult& r) {
  const int maxN = o.n.value_or(12);
  const std::string name = "Abel identities on 200 random rational tuples, n <= " + std::to_string(maxN);
  r.open(name);
  RandomSource rng(o.seed);
  for (int t = 0; t < 200; ++t) {
    const int n = rng.uniform_int(0, maxN);
    const Rational x(rng.uniform_int(1, 60), rng.uniform_int(1, 9));
    const Rational y(rng.uniform_int(1, 60), rng.uniform_int(1, 9));
    const int p = rng.uniform_int(-2, 2);
    const int q = rng.uniform_int(-2, 2);
    const auto bad = abel_failures(n, x, y, p, q);
    if (!bad.empty())
      r.fail(name, bad.front() + " at n=" + std::to_string(n) + " x=" + to_string(x) + " y=" + to_string(y) +
                       " p=" + std::to_string(p) + " q=" + std::to_string(q));
  }
}

inline void verify_coordinate(const VerifyOptions& o, VerifyResult& r) {
  const int maxN = o.maxSize.value_or(5);
  const int lawN = o.n.value_or(100);
  const std::string brute = "first-coordinate pmf = brute force, m <= n <= " + std::to_string(maxN);
  const std::string ends = "plateau and right-end values, m <= n <= " + std::to_string(lawN);
  r.open(brute);
  r.open(ends);
  for (int n = 1; n <= maxN; ++n)
    for (int m = 1; m <= n; ++m) {
      std::vector<BigInt> hits(static_cast<std::size_t>(n), 0);
      for_each_parking_function(m, n, [&](const ParkingFunction& pf) { ++hits[pf.pref(1) - 1]; }, o.limits);
      const auto pmf = pmf_first_coordinate(m, n);
      for (int j = 1; j <= n; ++j)
        if (pmf[j - 1] != Rational(hits[j - 1], count_pf(m, n))) r.fail(brute, "pmf " + pair_text(m, n) + " j=" + std::to_string(j));
    }
  for (int n = 1; n <= lawN; ++n)
    for (int m = 1; m <= n; ++m) {
      const auto pmf = pmf_first_coordinate(m, n);
      const Rational plateau(n - m + 2, static_cast<std::int64_t>(n - m + 1) * (n + 1));
      for (int j = 1; j <= n - m + 1; ++j)
        if (pmf[j - 1] != plateau) r.fail(ends, "plateau " + pair_text(m, n) + " j=" + std::to_string(j));
      if (pmf[n - 1] != rpow(n, m - 2) / rpow(n + 1, m - 1)) r.fail(ends, "right end " + pair_text(m, n));
    }
}

inline void verify_disp_moments(const VerifyOptions& o, VerifyResult& r) {
  const int maxN = o.maxSize.value_or(5);
  const std::string closed = "closed-form displacement moments = brute force, m <= n <= " + std::to_string(maxN);
  const std::string decomposition = "Var(disp) = n Var(pi_1) + n(n-1) Cov(pi_1, pi_2), n <= " + std::to_string(maxN);
  r.open(closed);
  r.open(decomposition);
  for (int n = 1; n <= maxN; ++n)
    for (int m = 0; m <= n; ++m) {
      Rational s1 = 0, s2 = 0;
      std::int64_t count = 0;
      for_each_parking_function(
          m, n,
          [&](const ParkingFunction& pf) {
            const auto d = displacement(pf);
            s1 += d;
            s2 += d * d;
            ++count;
          },
          o.limits);
      const auto exact = disp_moments_exact(m, n);
      if (exact.mean != s1 / count || exact.secondMoment != s2 / count) r.fail(closed, "moments " + pair_text(m, n));
    }
  for (int n = 1; n <= maxN; ++n) {
    const auto c = covariance_exact(n, o.limits);
    if (c.varDisp != c.decomposition) r.fail(decomposition, "n=" + std::to_string(n));
  }
}

inline void verify_holes(const VerifyOptions& o, VerifyResult& r) {
  const int maxN = o.maxSize.value_or(5);
  const std::string name = "E(k_i) = i(n+1)/(n-m+1), m < n <= " + std::to_string(maxN);
  r.open(name);
  for (int n = 1; n <= maxN; ++n)
    for (int m = 0; m < n; ++m) {
      std::vector<BigInt> sums(static_cast<std::size_t>(n - m), 0);
      for_each_parking_function(
          m, n,
          [&](const ParkingFunction& pf) {
            const auto holes = unattempted_spots(pf);
            for (std::size_t i = 0; i < holes.size(); ++i) sums[i] += holes[i];
          },
          o.limits);
      const auto exact = expected_holes(m, n);
      for (std::size_t i = 0; i < exact.size(); ++i)
        if (Rational(sums[i], count_pf(m, n)) != exact[i]) r.fail(name, "holes " + pair_text(m, n) + " i=" + std::to_string(i + 1));
    }
}

inline void verify_lucky(const VerifyOptions& o, VerifyResult& r) {
  const int maxN = o.maxSize.value_or(5);
  const std::string gf = "lucky generating function = brute force, m <= n <= " + std::to_string(maxN);
  const std::string moments = "lucky mean and variance = brute force, m <= n <= " + std::to_string(maxN);
  r.open(gf);
  r.open(moments);
  for (int n = 0; n <= maxN; ++n)
    for (int m = 0; m <= n; ++m) {
      std::vector<BigInt> coeffs;
      for_each_parking_function(
          m, n,
          [&](const ParkingFunction& pf) {
            const auto l = static_cast<std::size_t>(lucky_count(pf));
            if (coeffs.size() <= l) coeffs.resize(l + 1);
            ++coeffs[l];
          },
          o.limits);
      if (lucky_gf(m, n) != UnivariatePolynomial(coeffs)) r.fail(gf, "lucky " + pair_text(m, n));
      if (m == 0) continue;
      Rational s1 = 0, s2 = 0;
      for (std::size_t l = 0; l < coeffs.size(); ++l) {
        s1 += Rational(coeffs[l] * l);
        s2 += Rational(coeffs[l] * l * l);
      }
      const auto total = Rational(count_pf(m, n));
      const auto [mean, var] = lucky_mean_variance(m, n);
      if (mean != s1 / total || var != s2 / total - (s1 / total) * (s1 / total)) r.fail(moments, "lucky " + pair_text(m, n));
    }
}

inline void verify_sampler(const VerifyOptions& o, VerifyResult& r) {
  const int maxN = o.maxSize.value_or(5);
  const std::string name = "sampler chi-square at significance 1e-3, m <= n <= " + std::to_string(maxN) +
                           ", (n+1)^m <= 10^4, " + std::to_string(o.trials) + " draws each";
  r.open(name);
  std::uint64_t stream = 0;
  for (int n = 1; n <= maxN; ++n)
    for (int m = 1; m <= n; ++m) {
      if (ipow(BigInt(n + 1), static_cast<std::uint64_t>(m)) > 10000) continue;
      const auto rep = sampler_chi2_check(m, n, RandomSource::derive_seed(o.seed, stream++), o.trials, {}, 0, o.limits);
      if (!rep.passed()) r.fail(name, "sampler " + pair_text(m, n) + " p=" + std::to_string(rep.statistics.at("pvalue")));
    }
}

inline void verify_ensembles(const VerifyOptions& o, VerifyResult& r) {
  const int maxN = o.maxSize.value_or(4);
  const std::string name = "repeat-pattern law of PF(m,n) = that of [n+1]^m, m <= n <= " + std::to_string(maxN);
  r.open(name);
  for (int n = 1; n <= maxN; ++n)
    for (int m = 1; m <= n; ++m) {
      const auto [a, b] = ensemble_pattern_dist(m, n, o.limits);
      if (a != b) r.fail(name, "patterns " + pair_text(m, n));
    }
}

inline void verify_shuffle(const VerifyOptions& o, VerifyResult& r) {
  const int maxN = o.maxSize.value_or(5);
  const std::string prefix = "feasible first preferences form [k] with k = max_first_preference, m <= n <= " + std::to_string(maxN);
  const std::string round = "shuffle decomposition recomposes the tail, m <= n <= " + std::to_string(maxN);
  r.open(prefix);
  r.open(round);
  for (int n = 1; n <= maxN; ++n)
    for (int m = 1; m <= n; ++m) {
      // Tails are arbitrary words in [n]^(m-1).
      std::vector<int> rest(static_cast<std::size_t>(m - 1), 1);
      detail::require_within(ipow(BigInt(n), static_cast<std::uint64_t>(m - 1)), o.limits, "enumerating tails");
      while (true) {
        int feasible = 0;
        int largest = 0;
        std::vector<int> prefs(rest.size() + 1);
        std::copy(rest.begin(), rest.end(), prefs.begin() + 1);
        for (int j = 1; j <= n; ++j) {
          prefs[0] = j;
          if (is_parking_function(prefs, m, n)) {
            ++feasible;
            largest = j;
          }
        }
        const auto k = max_first_preference(rest, n);
        const bool prefixOk = feasible == 0 ? !k.has_value() : (k && *k == feasible && largest == feasible && *k >= n - m + 1);
        std::string text = std::to_string(m - 1) + " " + std::to_string(n) + " :";
        for (int v : rest) text += " " + std::to_string(v);
        if (!prefixOk) r.fail(prefix, text);
        if (k && recompose(shuffle_decompose(rest, n)) != rest) r.fail(round, text);
        int i = m - 2;
        while (i >= 0 && rest[i] == n) rest[i--] = 1;
        if (i < 0) break;
        ++rest[i];
      }
    }
}

}  // namespace detail

inline const std::map<std::string, std::function<void(const VerifyOptions&, VerifyResult&)>>& verify_suites() {
  static const std::map<std::string, std::function<void(const VerifyOptions&, VerifyResult&)>> suites{
      {"abel", detail::verify_abel},
      {"bijections", detail::verify_bijections},
      {"coordinate", detail::verify_coordinate},
      {"counting", detail::verify_counting},
      {"disp-inv", detail::verify_disp_inv},
      {"disp-moments", detail::verify_disp_moments},
      {"ensembles", detail::verify_ensembles},
      {"forest-tutte", detail::verify_forest_tutte},
      {"graphs", detail::verify_graphs},
      {"holes", detail::verify_holes},
      {"knuth", detail::verify_knuth},
      {"lucky", detail::verify_lucky},
      {"sampler", detail::verify_sampler},
      {"shuffle", detail::verify_shuffle},
      {"tutte", detail::verify_tutte},
  };
  return suites;
}

inline VerifyResult run_verify(const std::string& suite, const VerifyOptions& options = {}) {
  const auto& suites = verify_suites();
  const auto it = suites.find(suite);
  if (it == suites.end()) throw InputError("unknown verify suite '" + suite + "'");
  VerifyResult r;
  r.suite = suite;
  it->second(options, r);
  return r;
}

}  // namespace parkfn
