#include "hdwn/montecarlo.hpp"

#include "hdwn/baselines.hpp"
#include "hdwn/errors.hpp"
#include "hdwn/whitenoise_test.hpp"
#include "parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <string>

namespace hdwn {

namespace {

std::int64_t cell_dimension(double ratio, std::int64_t T) {
  return static_cast<std::int64_t>(std::llround(ratio * static_cast<double>(T)));
}

struct ReplicateOutcome {
  std::vector<double> z;          // per order, then adaptive; NaN on failure
  std::vector<char> reject;       // same layout
  double max_value = 0.0;
  double sum_value = 0.0;
};

class CellRunner {
 public:
  CellRunner(const ExperimentSpec& spec, std::int64_t cell_id, double ratio, std::int64_t T,
             int threads)
      : spec_(spec), cell_id_(cell_id), T_(T), p_(cell_dimension(ratio, T)), threads_(threads) {
    cfg_.q = spec.q;
    cfg_.orders = spec.orders;
    cfg_.alpha = spec.alpha;
    cfg_.threads = 1;
    if (spec.coeff_kind) {
      coeff_ = coeff_matrix(*spec.coeff_kind, p_);
      if (spec.coeff_value) coeff_.value = *spec.coeff_value;
    }
    if (spec.cov_kind == CovKind::identity) {
      cov_.emplace(identity_cov(p_));
    } else {
      RandomStream rng = derive_rep_rng(spec.master_seed, design_id(), 0);
      cov_.emplace(factor_cov(p_, rng));
    }
  }

  std::int64_t p() const { return p_; }

  CovarianceModel covariance_for(std::int64_t rep) const {
    if (spec_.cov_kind == CovKind::factor && spec_.redraw_factor) {
      RandomStream rng = derive_rep_rng(spec_.master_seed, design_id(),
                                        static_cast<std::uint64_t>(rep) + 1);
      return factor_cov(p_, rng);
    }
    return *cov_;
  }

  SeriesMatrix generate(const CovarianceModel& cov, RandomStream& rng) const {
    switch (spec_.model) {
      case ModelKind::null: return gen_null(cov, spec_.innov, T_, rng);
      case ModelKind::var1: return gen_var1(cov, coeff_, spec_.innov, T_, rng);
      case ModelKind::vma1: return gen_vma1(cov, coeff_, spec_.innov, T_, rng);
    }
    throw Error(ErrorCode::config, "unknown model");
  }

  ReplicateOutcome replicate(std::int64_t rep, bool with_baselines, double cv_max,
                             double cv_sum) const {
    RandomStream rng = derive_rep_rng(spec_.master_seed, cell_id_ | stream_domain::data,
                                      static_cast<std::uint64_t>(rep));
    const CovarianceModel cov = covariance_for(rep);
    const SeriesMatrix x = generate(cov, rng);
    const UStatReport report = assemble_report(
        compute_order_stats(x, cfg_.q, cfg_.orders, Kernel::parallel, 1), cfg_);

    ReplicateOutcome out;
    for (const OrderResult& r : report.orders) {
      out.z.push_back(r.z);
      out.reject.push_back(r.reject ? 1 : 0);
    }
    out.z.push_back(report.adaptive.z);
    out.reject.push_back(report.adaptive.reject ? 1 : 0);
    if (with_baselines) {
      out.max_value = max_stat(x, cfg_.q);
      out.sum_value = sum_stat(x, cfg_.q);
      out.reject.push_back(out.max_value > cv_max ? 1 : 0);
      out.reject.push_back(out.sum_value > cv_sum ? 1 : 0);
    }
    return out;
  }

  double calibrate(BaselineKind kind) const {
    const CovarianceModel cov = *cov_;
    const InnovationDist innov = spec_.innov;
    const std::int64_t T = T_;
    NullGenerator gen = [cov, innov, T](RandomStream& rng) { return gen_null(cov, innov, T, rng); };
    return calibrate_null(kind, gen, cfg_.q, spec_.calibration_reps, spec_.alpha,
                          spec_.master_seed, static_cast<std::uint64_t>(cell_id_), threads_);
  }

 private:
  std::uint64_t design_id() const {
    return static_cast<std::uint64_t>(cell_id_) | stream_domain::design;
  }

  const ExperimentSpec& spec_;
  std::int64_t cell_id_;
  std::int64_t T_;
  std::int64_t p_;
  int threads_;
  TestConfig cfg_;
  DiagCoeff coeff_;
  std::optional<CovarianceModel> cov_;
};

StatisticColumn summarise(std::string name, const std::vector<ReplicateOutcome>& reps,
                          std::size_t reject_index, std::optional<std::size_t> z_index,
                          double (*value_of)(const ReplicateOutcome&)) {
  StatisticColumn col;
  col.name = std::move(name);
  std::int64_t rejections = 0;
  double value_sum = 0.0;
  std::int64_t value_count = 0;
  for (const ReplicateOutcome& r : reps) {
    rejections += r.reject[reject_index];
    const double v = z_index ? r.z[*z_index] : value_of(r);
    if (std::isnan(v)) {
      ++col.failures;
    } else {
      value_sum += v;
      ++value_count;
    }
  }
  const double n = static_cast<double>(reps.size());
  const double rate = static_cast<double>(rejections) / n;
  col.rate_pct = 100.0 * rate;
  col.se_pct = 100.0 * std::sqrt(rate * (1.0 - rate) / n);
  col.mean_value = value_count > 0 ? value_sum / static_cast<double>(value_count)
                                   : std::numeric_limits<double>::quiet_NaN();
  return col;
}

ResultTable run_grid(const ExperimentSpec& spec, int threads) {
  spec.validate();
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
  const bool with_baselines = spec.study == StudyKind::power && spec.baselines;
  const std::int64_t min_T =
      *std::max_element(spec.orders.begin(), spec.orders.end()) * (spec.q + 1);

  ResultTable table;
  table.spec = spec;
  std::int64_t cell_id = 0;
  for (double ratio : spec.ratios) {
    for (std::int64_t T : spec.Ts) {
      const auto start = std::chrono::steady_clock::now();
      CellResult cell;
      cell.cell_id = cell_id;
      cell.ratio = ratio;
      cell.T = T;
      cell.p = cell_dimension(ratio, T);
      cell.scenario = scenario_name(spec);
      if (T < min_T || T <= spec.q) {
        cell.skipped = true;
        cell.skip_reason = "T = " + std::to_string(T) + " is below the smallest feasible horizon " +
                           std::to_string(min_T);
        table.cells.push_back(std::move(cell));
        ++cell_id;
        continue;
      }

      const CellRunner runner(spec, cell_id, ratio, T, nthreads);
      double cv_max = 0.0;
      double cv_sum = 0.0;
      if (with_baselines) {
        cv_max = runner.calibrate(BaselineKind::max_stat);
        cv_sum = runner.calibrate(BaselineKind::sum_stat);
        cell.cv_max = cv_max;
        cell.cv_sum = cv_sum;
      }

      std::vector<ReplicateOutcome> reps(static_cast<std::size_t>(spec.nreps));
      detail::ExceptionTrap trap;
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
      for (std::int64_t r = 0; r < spec.nreps; ++r) {
        trap.capture([&] { reps[r] = runner.replicate(r, with_baselines, cv_max, cv_sum); });
      }
      trap.rethrow();

      const std::size_t m = spec.orders.size();
      for (std::size_t k = 0; k < m; ++k) {
        cell.stats.push_back(summarise(order_column_name(spec.orders[k]), reps, k, k, nullptr));
      }
      cell.stats.push_back(summarise(kAdaptiveColumn, reps, m, m, nullptr));
      if (with_baselines) {
        cell.stats.push_back(summarise(kMaxColumn, reps, m + 1, std::nullopt,
                                       [](const ReplicateOutcome& r) { return r.max_value; }));
        cell.stats.push_back(summarise(kSumColumn, reps, m + 2, std::nullopt,
                                       [](const ReplicateOutcome& r) { return r.sum_value; }));
      }
      cell.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      table.cells.push_back(std::move(cell));
      ++cell_id;
    }
  }
  return table;
}

}  // namespace

void ExperimentSpec::validate() const {
  if (nreps < 1) throw Error(ErrorCode::config, "nreps must be >= 1");
  if (ratios.empty() || Ts.empty()) throw Error(ErrorCode::config, "ratio and T grids must be non-empty");
  for (double ratio : ratios) {
    for (std::int64_t T : Ts) {
      if (T < 1 || cell_dimension(ratio, T) < 1) {
        throw Error(ErrorCode::config, "every grid cell needs T >= 1 and round(ratio * T) >= 1");
      }
    }
  }
  TestConfig cfg;
  cfg.q = q;
  cfg.orders = orders;
  cfg.alpha = alpha;
  cfg.validate();
  if (study == StudyKind::size && model != ModelKind::null) {
    throw Error(ErrorCode::config, "size studies use model = null");
  }
  if (study == StudyKind::power && model == ModelKind::null) {
    throw Error(ErrorCode::config, "power studies use model = var1 or vma1");
  }
  if (model == ModelKind::null && (coeff_kind || coeff_value)) {
    throw Error(ErrorCode::config, "a coefficient makes no sense with model = null");
  }
  if (model != ModelKind::null && !coeff_kind) {
    throw Error(ErrorCode::config, "model " + std::string(to_string(model)) + " needs coeff_kind");
  }
  if (study == StudyKind::power && baselines && calibration_reps < kMinCalibrationReps) {
    throw Error(ErrorCode::config, "calibration_reps must be >= " +
                                       std::to_string(kMinCalibrationReps));
  }
}

const StatisticColumn& CellResult::column(std::string_view name) const {
  for (const StatisticColumn& c : stats) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::config, "no column named " + std::string(name));
}

std::string order_column_name(std::int64_t a) { return "U(" + std::to_string(a) + ")"; }

std::string scenario_name(const ExperimentSpec& spec) {
  std::ostringstream out;
  out << to_string(spec.model);
  if (spec.coeff_kind) out << '/' << to_string(*spec.coeff_kind);
  if (spec.coeff_value) out << '@' << *spec.coeff_value;
  out << '/' << to_string(spec.cov_kind) << '/' << to_string(spec.innov);
  return out.str();
}

ResultTable run_size_study(const ExperimentSpec& spec, int threads) {
  if (spec.study != StudyKind::size) throw Error(ErrorCode::config, "not a size study");
  return run_grid(spec, threads);
}

ResultTable run_power_study(const ExperimentSpec& spec, int threads) {
  if (spec.study != StudyKind::power) throw Error(ErrorCode::config, "not a power study");
  return run_grid(spec, threads);
}

ResultTable run_study(const ExperimentSpec& spec, int threads) {
  return spec.study == StudyKind::size ? run_size_study(spec, threads)
                                       : run_power_study(spec, threads);
}

std::string_view to_string(StudyKind v) { return v == StudyKind::size ? "size" : "power"; }

std::string_view to_string(ModelKind v) {
  switch (v) {
    case ModelKind::null: return "null";
    case ModelKind::var1: return "var1";
    case ModelKind::vma1: return "vma1";
  }
  return "unknown";
}

std::string_view to_string(CovKind v) { return v == CovKind::identity ? "identity" : "factor"; }

StudyKind parse_study_kind(std::string_view s) {
  if (s == "size") return StudyKind::size;
  if (s == "power") return StudyKind::power;
  throw Error(ErrorCode::config, "unknown study '" + std::string(s) + "'");
}

ModelKind parse_model_kind(std::string_view s) {
  if (s == "null") return ModelKind::null;
  if (s == "var1") return ModelKind::var1;
  if (s == "vma1") return ModelKind::vma1;
  throw Error(ErrorCode::config, "unknown model '" + std::string(s) + "'");
}

CovKind parse_cov_kind(std::string_view s) {
  if (s == "identity") return CovKind::identity;
  if (s == "factor") return CovKind::factor;
  throw Error(ErrorCode::config, "unknown covariance kind '" + std::string(s) + "'");
}

}  // namespace hdwn
