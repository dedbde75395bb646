#pragma once

#include <string>

#include "weylcover/checker.hpp"
#include "weylcover/harness.hpp"

namespace weylcover {

// Resolved run configuration embedded in every report.
struct RunConfig {
  std::vector<std::string> instance_ids;
  std::uint64_t seed = 42;
  int probes = 100;
  std::uint64_t samples = 100000;
  int bins = 40;
  std::string format = "json";  // "json" | "csv"
  bool timestamp = true;
  Tolerances tols;
};

std::string catalog_json();
std::string condition_report_json(const ConditionReport& report, const RunConfig& cfg);
std::string fiber_report_json(const FiberReport& report, const RunConfig& cfg);
std::string eq1_report_json(const std::string& instance_id,
                            const std::vector<Eq1Verdict>& verdicts, const RunConfig& cfg);
std::string histogram_json(const std::string& instance_id, const HistogramComparison& h,
                           const RunConfig& cfg);
std::string histogram_csv(const HistogramComparison& h);
std::string estimates_csv(const std::vector<Eq1Verdict>& verdicts);

}  // namespace weylcover
