// parkfn: batch front end for checking, converting, counting, enumerating, sampling and verifying
// parking functions. JSON is written to stdout unless --output is given.
//
// Exit codes: 0 success, 1 validity or assertion failure, 2 usage or parse error, 3 resource cap.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "parkfn/parkfn.hpp"

namespace {

using nlohmann::json;
using namespace parkfn;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

struct Common {
  std::string output;
  std::string format;
  std::optional<std::uint64_t> cap;
};

Limits limits_from(const Common& c) {
  Limits l;
  if (const char* env = std::getenv("PARKFN_CAP")) {
    try {
      l.maxObjects = std::stoull(env);
    } catch (const std::exception&) {
      throw InputError(std::string("PARKFN_CAP must be a non-negative integer, got '") + env + "'");
    }
  }
  if (c.cap) l.maxObjects = *c.cap;
  return l;
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw InputError("cannot open '" + c.output + "' for writing");
  out << text;
}

void emit_json(const Common& c, const json& j) { emit(c, j.dump(2) + "\n"); }

json envelope(const std::string& kind, json config) {
  return {{"kind", kind}, {"version", kVersion}, {"config", std::move(config)}};
}

json pf_record(const ParkingFunction& pf) {
  return {{"m", pf.cars()}, {"n", pf.spots()}, {"prefs", pf.prefs()}, {"text", to_text(pf)}};
}

// ---------------------------------------------------------------------------------------------
// check

struct CheckArgs {
  std::string input;
  std::optional<int> profileGrid;
};

// First car that cannot park, and why. Works on raw input, including out-of-range preferences
// and m > n, where ParkingFunction itself would refuse to be built.
std::pair<int, std::string> first_failure(const PreferenceList& raw) {
  std::vector<char> taken(static_cast<std::size_t>(raw.n) + 1, 0);
  for (std::size_t i = 0; i < raw.prefs.size(); ++i) {
    const int p = raw.prefs[i];
    const int car = static_cast<int>(i) + 1;
    if (p < 1) return {car, "preference " + std::to_string(p) + " is below 1"};
    int spot = p;
    while (spot <= raw.n && taken[static_cast<std::size_t>(spot)]) ++spot;
    if (spot > raw.n) return {car, "car " + std::to_string(car) + " finds no free spot"};
    taken[static_cast<std::size_t>(spot)] = 1;
  }
  return {0, ""};
}

int cmd_check(const CheckArgs& a, const Common& c) {
  const auto raw = parse_preference_list(a.input);
  json config{{"command", "check"}, {"input", a.input}};
  if (a.profileGrid) config["profileGrid"] = *a.profileGrid;
  auto out = envelope("check", config);
  const auto [car, reason] = first_failure(raw);
  if (car != 0) {
    out["valid"] = false;
    out["failingCar"] = car;
    out["reason"] = reason;
    emit_json(c, out);
    return kExitFailure;
  }
  const ParkingFunction pf(raw.prefs, raw.n);
  out["valid"] = true;
  out["pf"] = pf_record(pf);
  out["slots"] = pf.outcome().slots;
  out["carDisplacement"] = pf.outcome().displacement;
  out["disp"] = displacement(pf);
  out["cm"] = critical_lr_maxima(pf);
  out["lucky"] = lucky_count(pf);
  out["holes"] = unattempted_spots(pf);
  out["specification"] = specification(pf);
  out["queueProfile"] = queue_profile(pf);
  const auto d = segment_decomposition(pf);
  const auto bounds = d.bounds();
  auto segs = json::array();
  for (std::size_t i = 0; i < d.segments.size(); ++i)
    segs.push_back({{"first", bounds[i] + 1},
                    {"last", bounds[i + 1] - 1},
                    {"cars", d.members[i]},
                    {"prefs", d.segments[i].prefs()}});
  out["segments"] = segs;
  if (a.profileGrid) {
    auto profiles = json::array();
    for (std::size_t i = 0; i < d.segments.size(); ++i)
      profiles.push_back(excursion_profile(pf, static_cast<int>(i), *a.profileGrid));
    out["profiles"] = profiles;
  }
  emit_json(c, out);
  return 0;
}

// ---------------------------------------------------------------------------------------------
// convert

struct ConvertArgs {
  std::string input;
  std::string from = "pf";
  std::string bijection = "bfs1";
  bool dot = false;
  bool roundtrip = false;
};

RootedForest to_forest(const ParkingFunction& pf, const std::string& bijection) {
  if (bijection == "knuth") return pf_to_forest_knuth(pf);
  return pf_to_forest(pf, bijection == "bfs1" ? BfsVersion::LevelOrder : BfsVersion::TreeByTree);
}

ParkingFunction to_pf(const RootedForest& f, const std::string& bijection) {
  if (bijection == "knuth") return forest_to_pf_knuth(f);
  return forest_to_pf(f, bijection == "bfs1" ? BfsVersion::LevelOrder : BfsVersion::TreeByTree);
}

int cmd_convert(const ConvertArgs& a, const Common& c) {
  json config{{"command", "convert"}, {"input", a.input}, {"from", a.from}, {"bijection", a.bijection}};
  auto out = envelope("convert", config);
  bool same = true;
  std::string text;
  if (a.from == "pf") {
    const auto raw = parse_preference_list(a.input);
    std::optional<ParkingFunction> parsed;
    try {
      parsed.emplace(raw.prefs, raw.n);
    } catch (const Error& e) {
      std::cerr << "invalid: " << e.what() << "\n";
      return kExitFailure;
    }
    const auto& pf = *parsed;
    const auto f = to_forest(pf, a.bijection);
    out["forest"] = to_text(f);
    out["inversions"] = inversions(f);
    text = a.dot ? to_dot(f) : to_text(f) + "\n";
    if (a.roundtrip) same = to_pf(f, a.bijection) == pf;
  } else {
    std::optional<RootedForest> parsed;
    try {
      parsed.emplace(parse_forest(a.input));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      std::cerr << "invalid: " << e.what() << "\n";
      return kExitFailure;
    }
    const auto& f = *parsed;
    const auto pf = to_pf(f, a.bijection);
    out["pf"] = pf_record(pf);
    out["inversions"] = inversions(f);
    text = to_text(pf) + "\n";
    if (a.roundtrip) same = to_forest(pf, a.bijection) == f;
  }
  if (a.roundtrip) {
    out["roundtrip"] = same;
    text += std::string("roundtrip ") + (same ? "true" : "false") + "\n";
  }
  if (c.format == "json") {
    if (a.dot && a.from == "pf") out["dot"] = to_dot(parse_forest(out["forest"].get<std::string>()));
    emit_json(c, out);
  } else {
    emit(c, text);
  }
  return same ? 0 : kExitFailure;
}

// ---------------------------------------------------------------------------------------------
// count and enumerate

struct CountArgs {
  int m = 0;
  int n = 0;
  std::optional<int> first;
  std::string holes;
  bool crossCheck = false;
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (item.find_first_not_of(' ', used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("bad integer '" + item + "' in list '" + text + "'");
    }
  }
  return out;
}

int cmd_count(const CountArgs& a, const Common& c) {
  const auto lim = limits_from(c);
  json config{{"command", "count"}, {"m", a.m}, {"n", a.n}, {"crossCheck", a.crossCheck}};
  if (a.first) config["first"] = *a.first;
  std::vector<int> holes;
  if (!a.holes.empty()) {
    holes = parse_int_list(a.holes);
    config["holes"] = holes;
  }
  if (a.first && !a.holes.empty()) throw InputError("--first and --holes cannot be combined");
  BigInt value;
  if (a.first) {
    value = count_pf_first(a.m, a.n, *a.first);
  } else if (!a.holes.empty()) {
    value = count_pf_with_holes(a.m, a.n, holes);
  } else {
    value = count_pf(a.m, a.n);
  }
  auto out = envelope("count", config);
  out["count"] = value.str();
  bool agrees = true;
  if (a.crossCheck) {
    BigInt brute = 0;
    for_each_parking_function(
        a.m, a.n,
        [&](const ParkingFunction& pf) {
          if (a.first && pf.pref(1) != *a.first) return;
          if (!a.holes.empty() && unattempted_spots(pf) != holes) return;
          ++brute;
        },
        lim);
    agrees = brute == value;
    out["enumerated"] = brute.str();
    out["agrees"] = agrees;
  }
  if (c.format == "json") {
    emit_json(c, out);
  } else {
    std::string text = value.str() + "\n";
    if (a.crossCheck) text += "enumerated " + out["enumerated"].get<std::string>() + (agrees ? " agrees\n" : " DIFFERS\n");
    emit(c, text);
  }
  return agrees ? 0 : kExitFailure;
}

struct EnumerateArgs {
  int m = 0;
  int n = 0;
  bool forests = false;
};

int cmd_enumerate(const EnumerateArgs& a, const Common& c) {
  const auto lim = limits_from(c);
  std::vector<std::string> items;
  if (a.forests) {
    for_each_forest(a.m, a.n, [&](const RootedForest& f) { items.push_back(to_text(f)); }, lim);
  } else {
    for_each_parking_function(a.m, a.n, [&](const ParkingFunction& pf) { items.push_back(to_text(pf)); }, lim);
  }
  if (c.format == "json") {
    json config{{"command", "enumerate"}, {"m", a.m}, {a.forests ? "s" : "n", a.n}, {"forests", a.forests}};
    auto out = envelope("enumerate", config);
    out["count"] = std::to_string(items.size());
    out["items"] = items;
    emit_json(c, out);
  } else {
    std::string text;
    for (const auto& s : items) text += s + "\n";
    emit(c, text);
  }
  return 0;
}

// ---------------------------------------------------------------------------------------------
// sample

struct SampleArgs {
  int m = 0;
  int n = 0;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string report;
  int grid = 20;
  int segment = 0;
  int maxRepeats = 4;
  Thresholds thresholds;
};

json sample_config(const SampleArgs& a) {
  json config{{"command", "sample"}, {"m", a.m},
              {"n", a.n},          {"trials", std::to_string(a.trials)},
              {"seed", std::to_string(a.seed)}};
  if (!a.report.empty()) config["report"] = a.report;
  return config;
}

// Raw samples: one canonical pf per line (CSV columns index,pf) or a JSON list.
int sample_raw(const SampleArgs& a, const Common& c) {
  using Batch = std::vector<ParkingFunction>;
  const auto all = run_streams<Batch>(
      a.seed, a.trials,
      [&](RandomSource& rng, std::uint64_t count) {
        Batch b;
        b.reserve(count);
        for (std::uint64_t t = 0; t < count; ++t) b.push_back(sample_pf(a.m, a.n, rng));
        return b;
      },
      [](Batch& x, const Batch& y) { x.insert(x.end(), y.begin(), y.end()); }, a.threads);
  if (c.format == "json") {
    auto out = envelope("samples", sample_config(a));
    out["generator"] = RandomSource::kAlgorithm;
    out["seedDerivation"] = seed_derivation_note();
    auto list = json::array();
    for (const auto& pf : all) list.push_back(to_text(pf));
    out["samples"] = list;
    emit_json(c, out);
  } else {
    std::string text = "index,pf\n";
    for (std::size_t i = 0; i < all.size(); ++i) text += std::to_string(i + 1) + ",\"" + to_text(all[i]) + "\"\n";
    emit(c, text);
  }
  return 0;
}

// Mean and standard deviation of one segment's excursion profile over the samples.
// CSV columns: x,mean,stddev.
int sample_excursion(const SampleArgs& a, const Common& c) {
  using Acc = std::vector<Moments>;
  const auto acc = run_streams<Acc>(
      a.seed, a.trials,
      [&](RandomSource& rng, std::uint64_t count) {
        Acc moments(static_cast<std::size_t>(a.grid) + 1);
        for (std::uint64_t t = 0; t < count; ++t) {
          const auto profile = excursion_profile(sample_pf(a.m, a.n, rng), a.segment, a.grid);
          for (std::size_t i = 0; i < profile.size(); ++i) moments[i].add(profile[i]);
        }
        return moments;
      },
      [](Acc& x, const Acc& y) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i].merge(y[i]);
      },
      a.threads);
  if (c.format == "json") {
    auto config = sample_config(a);
    config["grid"] = a.grid;
    config["segment"] = a.segment;
    auto out = envelope("excursion", config);
    out["generator"] = RandomSource::kAlgorithm;
    out["seedDerivation"] = seed_derivation_note();
    auto rows = json::array();
    for (std::size_t i = 0; i < acc.size(); ++i)
      rows.push_back({{"x", static_cast<double>(i) / a.grid}, {"mean", acc[i].mean}, {"stddev", std::sqrt(acc[i].variance())}});
    out["profile"] = rows;
    emit_json(c, out);
  } else {
    std::ostringstream text;
    text.precision(17);
    text << "x,mean,stddev\n";
    for (std::size_t i = 0; i < acc.size(); ++i)
      text << static_cast<double>(i) / a.grid << ',' << acc[i].mean << ',' << std::sqrt(acc[i].variance()) << '\n';
    emit(c, text.str());
  }
  return 0;
}

int cmd_sample(const SampleArgs& a, const Common& c) {
  if (a.m < 0 || a.n < 0 || a.m > a.n) throw InputError("sample needs 0 <= m <= n");
  if (a.report.empty()) return sample_raw(a, c);
  if (a.report == "excursion") return sample_excursion(a, c);
  SampleReport r;
  if (a.report == "chi2") {
    r = sampler_chi2_check(a.m, a.n, a.seed, a.trials, a.thresholds, a.threads, limits_from(c));
  } else if (a.report == "holes") {
    r = hole_check(a.m, a.n, a.seed, a.trials, a.thresholds, a.threads);
  } else if (a.report == "lucky") {
    r = lucky_clt_check(a.m, a.n, a.seed, a.trials, a.thresholds, a.threads);
  } else if (a.report == "repeats") {
    r = repeats_check(a.m, a.n, a.seed, a.trials, a.thresholds, a.maxRepeats, a.threads);
  } else {
    if (a.m != a.n) throw InputError("the covariance report needs m = n");
    r = covariance_check(a.n, a.seed, a.trials, a.thresholds, a.threads);
  }
  r.config["command"] = "sample";
  if (c.format == "csv") {
    emit(c, r.to_csv());
  } else {
    emit_json(c, r.to_json());
  }
  return r.passed() ? 0 : kExitFailure;
}

// ---------------------------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string suite;
  VerifyOptions options;
  std::optional<int> maxSize;
  std::optional<int> n;
};

int cmd_verify(VerifyArgs a, const Common& c) {
  a.options.maxSize = a.maxSize;
  a.options.n = a.n;
  a.options.limits = limits_from(c);
  const auto r = run_verify(a.suite, a.options);
  auto out = r.to_json();
  json config{{"command", "verify"},
              {"suite", a.suite},
              {"seed", std::to_string(a.options.seed)},
              {"trials", std::to_string(a.options.trials)},
              {"cap", std::to_string(a.options.limits.maxObjects)}};
  if (a.maxSize) config["maxSize"] = *a.maxSize;
  if (a.n) config["n"] = *a.n;
  out["config"] = config;
  emit_json(c, out);
  return r.passed() ? 0 : kExitFailure;
}

int run(int argc, char** argv) {
  CLI::App app{"Parking functions: check, convert, count, enumerate, sample, verify"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Common common;
  app.add_option("--cap", common.cap, "Brute-force work ceiling (default: PARKFN_CAP or 10000000)");
  app.add_option("-o,--output", common.output, "Write to this file instead of stdout");

  CheckArgs check;
  auto* checkCmd = app.add_subcommand("check", "Validate a preference list and report its statistics");
  checkCmd->add_option("pf", check.input, "'m n : p1 ... pm'")->required();
  checkCmd->add_option("--profile-grid", check.profileGrid, "Add each segment's excursion profile on this grid")
      ->check(CLI::PositiveNumber);

  ConvertArgs convert;
  std::string convertFormat = "text";
  auto* convertCmd = app.add_subcommand("convert", "Map between parking functions and rooted forests");
  convertCmd->add_option("input", convert.input, "'m n : p1 ... pm' or 's m : j->parent ...'")->required();
  convertCmd->add_option("--from", convert.from)->check(CLI::IsMember({"pf", "forest"}));
  convertCmd->add_option("--bijection", convert.bijection)->check(CLI::IsMember({"bfs1", "bfs2", "knuth"}));
  convertCmd->add_flag("--dot", convert.dot, "Graphviz output for a forest");
  convertCmd->add_flag("--roundtrip", convert.roundtrip, "Map back and report equality");
  convertCmd->add_option("--format", convertFormat)->check(CLI::IsMember({"text", "json"}));

  CountArgs count;
  std::string countFormat = "text";
  auto* countCmd = app.add_subcommand("count", "Exact size of PF(m, n), optionally filtered");
  countCmd->add_option("m", count.m)->required();
  countCmd->add_option("n", count.n)->required();
  countCmd->add_option("--first", count.first, "Only pfs whose first preference is this value");
  countCmd->add_option("--holes", count.holes, "Only pfs with these unattempted spots, e.g. '2,5'");
  countCmd->add_flag("--cross-check", count.crossCheck, "Also count by enumeration and compare");
  countCmd->add_option("--format", countFormat)->check(CLI::IsMember({"text", "json"}));

  EnumerateArgs enumerate;
  std::string enumerateFormat = "text";
  auto* enumerateCmd = app.add_subcommand("enumerate", "List PF(m, n), or forests with m non-roots and n roots");
  enumerateCmd->add_option("m", enumerate.m)->required();
  enumerateCmd->add_option("n", enumerate.n)->required();
  enumerateCmd->add_flag("--forests", enumerate.forests);
  enumerateCmd->add_option("--format", enumerateFormat)->check(CLI::IsMember({"text", "json"}));

  SampleArgs sample;
  std::string sampleFormat;
  auto* sampleCmd = app.add_subcommand("sample", "Uniform samples from PF(m, n) or a Monte Carlo report");
  sampleCmd->add_option("m", sample.m)->required();
  sampleCmd->add_option("n", sample.n)->required();
  sampleCmd->add_option("--trials", sample.trials);
  sampleCmd->add_option("--seed", sample.seed);
  sampleCmd->add_option("--threads", sample.threads, "0 uses every core; output does not depend on it");
  sampleCmd->add_option("--report", sample.report)
      ->check(CLI::IsMember({"chi2", "holes", "lucky", "repeats", "covariance", "excursion"}));
  sampleCmd->add_option("--grid", sample.grid, "Excursion grid size")->check(CLI::PositiveNumber);
  sampleCmd->add_option("--segment", sample.segment, "Excursion segment index, from 0");
  sampleCmd->add_option("--max-repeats", sample.maxRepeats);
  sampleCmd->add_option("--significance", sample.thresholds.significance);
  sampleCmd->add_option("--sigma", sample.thresholds.sigmaBand);
  sampleCmd->add_option("--ks", sample.thresholds.ksThreshold);
  sampleCmd->add_option("--format", sampleFormat)->check(CLI::IsMember({"json", "csv"}));

  VerifyArgs verify;
  std::string suiteNames;
  for (const auto& [name, fn] : verify_suites()) suiteNames += (suiteNames.empty() ? "" : ", ") + name;
  auto* verifyCmd = app.add_subcommand("verify", "Run a named identity suite (" + suiteNames + ")");
  verifyCmd->add_option("suite", verify.suite)->required();
  verifyCmd->add_option("--max-size", verify.maxSize);
  verifyCmd->add_option("--n", verify.n);
  verifyCmd->add_option("--seed", verify.options.seed);
  verifyCmd->add_option("--trials", verify.options.trials);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*checkCmd) return cmd_check(check, common);
    if (*convertCmd) {
      common.format = convertFormat;
      return cmd_convert(convert, common);
    }
    if (*countCmd) {
      common.format = countFormat;
      return cmd_count(count, common);
    }
    if (*enumerateCmd) {
      common.format = enumerateFormat;
      return cmd_enumerate(enumerate, common);
    }
    if (*sampleCmd) {
      const bool tabular = sample.report.empty() || sample.report == "excursion";
      common.format = sampleFormat.empty() ? (tabular ? "csv" : "json") : sampleFormat;
      return cmd_sample(sample, common);
    }
    if (*verifyCmd) return cmd_verify(verify, common);
  } catch (const ResourceLimit& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitCap;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotAParkingFunction& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kExitFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << "\n";
    return kExitFailure;
  }
}
