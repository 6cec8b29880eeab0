#pragma once

// SampleReport: a Monte Carlo run with its configuration, statistics, references and verdicts.

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "parkfn/errors.hpp"

namespace parkfn {

inline constexpr const char* kVersion = "1.0.0";

struct Verdict {
  std::string name;
  double statistic = 0;
  double threshold = 0;
  std::string comparison;  ///< "<", "<=", ">=" or ">": statistic (comparison) threshold passes
  bool passed = false;

  static bool evaluate(double statistic, const std::string& comparison, double threshold) {
    if (comparison == "<") return statistic < threshold;
    if (comparison == "<=") return statistic <= threshold;
    if (comparison == ">=") return statistic >= threshold;
    if (comparison == ">") return statistic > threshold;
    throw InputError("unknown comparison '" + comparison + "'");
  }

  static Verdict make(std::string name, double statistic, const std::string& comparison, double threshold) {
    return {std::move(name), statistic, threshold, comparison, evaluate(statistic, comparison, threshold)};
  }
};

struct PmfRow {
  std::string label;
  std::uint64_t observed = 0;
  double reference = 0;  ///< reference probability of the cell
};

struct SampleReport {
  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::uint64_t sampleCount = 0;
  std::string generator;
  std::string seedDerivation;
  std::map<std::string, double> statistics;
  std::map<std::string, double> references;
  std::vector<PmfRow> pmf;
  std::vector<Verdict> verdicts;

  bool passed() const {
    for (const auto& v : verdicts)
      if (!v.passed) return false;
    return true;
  }

  const Verdict& verdict(const std::string& name) const {
    for (const auto& v : verdicts)
      if (v.name == name) return v;
    throw InputError("no verdict named '" + name + "'");
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["kind"] = "sample-report";
    j["version"] = kVersion;
    j["config"] = config;
    j["seed"] = std::to_string(seed);
    j["sampleCount"] = std::to_string(sampleCount);
    j["generator"] = generator;
    j["seedDerivation"] = seedDerivation;
    j["statistics"] = statistics;
    j["references"] = references;
    auto rows = nlohmann::json::array();
    for (const auto& r : pmf) rows.push_back({{"label", r.label}, {"observed", std::to_string(r.observed)}, {"reference", r.reference}});
    j["pmf"] = rows;
    auto vs = nlohmann::json::array();
    for (const auto& v : verdicts)
      vs.push_back({{"name", v.name},
                    {"statistic", v.statistic},
                    {"threshold", v.threshold},
                    {"comparison", v.comparison},
                    {"passed", v.passed}});
    j["verdicts"] = vs;
    j["passed"] = passed();
    return j;
  }

  /// Columns: label, observed, reference_probability, expected_count.
  std::string to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "label,observed,reference_probability,expected_count\n";
    for (const auto& r : pmf)
      out << '"' << r.label << "\"," << r.observed << ',' << r.reference << ','
          << r.reference * static_cast<double>(sampleCount) << '\n';
    return out.str();
  }
};

}  // namespace parkfn
