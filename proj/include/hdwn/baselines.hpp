#pragma once

#include "hdwn/rng.hpp"
#include "hdwn/series.hpp"

#include <cstdint>
#include <functional>
#include <string_view>

namespace hdwn {

/// Circular sample autocovariance (1/T) sum_t x_t x_{t-tau}^T with
/// x_t = x_{t+T} for t <= 0, or its autocorrelation version.
struct AutocovEstimate {
  std::int64_t tau = 0;
  Matrix matrix;
};

enum class BaselineKind { max_stat, sum_stat };

struct BaselineResult {
  BaselineKind kind = BaselineKind::max_stat;
  double value = 0.0;
  double critical_value = 0.0;
  bool reject = false;
};

AutocovEstimate sample_autocov(const SeriesMatrix& x, std::int64_t tau);
AutocovEstimate sample_autocorr(const SeriesMatrix& x, std::int64_t tau);

/// M_q = max over tau in [1, q] and all (i, j) of |rho_{i,j,tau}|.
double max_stat(const SeriesMatrix& x, std::int64_t q);
/// S_q = sum over tau in [1, q] of ||Sigma_tau||_F^2.
double sum_stat(const SeriesMatrix& x, std::int64_t q);

double baseline_value(BaselineKind kind, const SeriesMatrix& x, std::int64_t q);

BaselineResult decide(BaselineKind kind, double value, double critical_value);

/// Draws one null panel from the supplied stream.
using NullGenerator = std::function<SeriesMatrix(RandomStream&)>;

inline constexpr std::int64_t kMinCalibrationReps = 500;

/// The empirical (1 - alpha) quantile of the statistic over `nreps` null
/// panels; replication r uses derive_rep_rng(seed, cell_id | calibration, r).
/// The quantile is the ceil((1 - alpha) n)-th order statistic, so a value
/// rejects when it is strictly greater.
double calibrate_null(BaselineKind kind, const NullGenerator& null_generator,
                      std::int64_t q, std::int64_t nreps, double alpha,
                      std::uint64_t seed, std::uint64_t cell_id = 0,
                      int threads = 0);

/// Quantile rule shared by calibrate_null; `values` is sorted in place.
double empirical_upper_quantile(std::vector<double>& values, double alpha);

std::string_view to_string(BaselineKind kind);

}  // namespace hdwn
