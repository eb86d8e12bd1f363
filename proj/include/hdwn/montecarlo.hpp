#pragma once

#include "hdwn/covariance_models.hpp"
#include "hdwn/simulator.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hdwn {

enum class StudyKind { size, power };
enum class ModelKind { null, var1, vma1 };
enum class CovKind { identity, factor };

struct ExperimentSpec {
  StudyKind study = StudyKind::size;
  ModelKind model = ModelKind::null;
  CovKind cov_kind = CovKind::identity;
  InnovationDist innov = InnovationDist::gaussian;
  std::optional<CoeffKind> coeff_kind;  // required for var1 / vma1
  std::optional<double> coeff_value;    // overrides the kind's magnitude
  std::vector<double> ratios{0.5};
  std::vector<std::int64_t> Ts{100};
  std::int64_t q = 1;
  std::vector<std::int64_t> orders{2, 4, 6};
  double alpha = 0.05;
  std::int64_t nreps = 2000;
  std::uint64_t master_seed = 1;
  // Power studies only.
  bool baselines = true;
  std::int64_t calibration_reps = 2000;
  // Redraw the factor Sigma_0 for every replication instead of once per cell.
  bool redraw_factor = false;

  /// Throws ErrorCode::config on an inconsistent spec.
  void validate() const;
};

struct StatisticColumn {
  std::string name;
  double rate_pct = 0.0;
  double se_pct = 0.0;
  // Mean standardised statistic for U-type columns, mean raw value for
  // baselines.
  double mean_value = 0.0;
  std::int64_t failures = 0;
};

struct CellResult {
  std::int64_t cell_id = 0;
  double ratio = 0.0;
  std::int64_t p = 0;
  std::int64_t T = 0;
  std::string scenario;
  bool skipped = false;
  std::string skip_reason;
  std::vector<StatisticColumn> stats;
  std::optional<double> cv_max;
  std::optional<double> cv_sum;
  double seconds = 0.0;

  const StatisticColumn& column(std::string_view name) const;
};

struct ResultTable {
  ExperimentSpec spec;
  std::vector<CellResult> cells;
};

/// Column names used in tables: "U(2)", "U(adp)", "M_q", "S_q".
std::string order_column_name(std::int64_t a);
inline constexpr const char* kAdaptiveColumn = "U(adp)";
inline constexpr const char* kMaxColumn = "M_q";
inline constexpr const char* kSumColumn = "S_q";

std::string scenario_name(const ExperimentSpec& spec);

/// Null panels, rejection rates per order and adaptive. The factor Sigma_0
/// is drawn once per cell unless spec.redraw_factor.
ResultTable run_size_study(const ExperimentSpec& spec, int threads = 0);

/// Alternative panels, rejection rates for every U column and, when
/// spec.baselines, for M_q and S_q calibrated on the matched null.
ResultTable run_power_study(const ExperimentSpec& spec, int threads = 0);

ResultTable run_study(const ExperimentSpec& spec, int threads = 0);

std::string_view to_string(StudyKind v);
std::string_view to_string(ModelKind v);
std::string_view to_string(CovKind v);
StudyKind parse_study_kind(std::string_view s);
ModelKind parse_model_kind(std::string_view s);
CovKind parse_cov_kind(std::string_view s);

}  // namespace hdwn
