#pragma once

#include "hdwn/montecarlo.hpp"
#include "hdwn/whitenoise_test.hpp"

#include "json.hpp"

#include <string>

namespace hdwn {

inline constexpr const char* kSoftwareVersion = "0.1.0";

struct ReportInput {
  std::string source;
  std::int64_t p = 0;
  std::int64_t T = 0;
};

nlohmann::json report_to_json(const UStatReport& report, const TestConfig& cfg,
                              const ReportInput& input, double wall_seconds);

ExperimentSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const ExperimentSpec& spec);

/// One row per cell; no timing columns, so identical studies give
/// identical bytes.
std::string table_to_csv(const ResultTable& table);

/// Spec echo, seeds, critical values and per-cell runtimes.
nlohmann::json table_to_json(const ResultTable& table, double wall_seconds);

}  // namespace hdwn
