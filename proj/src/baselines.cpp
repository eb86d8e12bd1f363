#include "hdwn/baselines.hpp"

#include "hdwn/errors.hpp"
#include "parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hdwn {

namespace {

void require_lag(const SeriesMatrix& x, std::int64_t tau) {
  if (tau < 0 || tau >= x.T()) {
    throw Error(ErrorCode::config, "lag " + std::to_string(tau) + " must lie in [0, T)");
  }
}

Matrix circular_autocov(const Matrix& v, std::int64_t tau) {
  const Eigen::Index T = v.cols();
  if (tau == 0) {
    Matrix s = (v * v.transpose()) / static_cast<double>(T);
    return 0.5 * (s + s.transpose());
  }
  // column t of `lagged` is x_{t - tau}, wrapping to x_{t - tau + T}.
  Matrix lagged(v.rows(), T);
  lagged.leftCols(tau) = v.rightCols(tau);
  lagged.rightCols(T - tau) = v.leftCols(T - tau);
  return (v * lagged.transpose()) / static_cast<double>(T);
}

Vector inverse_sd(const Matrix& v) {
  const Vector var = v.rowwise().squaredNorm() / static_cast<double>(v.cols());
  Vector out(var.size());
  for (Eigen::Index i = 0; i < var.size(); ++i) {
    if (!(var(i) > 0.0)) {
      throw Error(ErrorCode::zero_variance_series,
                  "series " + std::to_string(i + 1) + " has zero sample variance");
    }
    out(i) = 1.0 / std::sqrt(var(i));
  }
  return out;
}

void require_q(const SeriesMatrix& x, std::int64_t q) {
  if (q < 1) throw Error(ErrorCode::config, "q must be >= 1");
  if (x.T() <= q) throw Error(ErrorCode::insufficient_sample, "baseline statistics need T > q");
}

}  // namespace

AutocovEstimate sample_autocov(const SeriesMatrix& x, std::int64_t tau) {
  require_lag(x, tau);
  return {tau, circular_autocov(x.values(), tau)};
}

AutocovEstimate sample_autocorr(const SeriesMatrix& x, std::int64_t tau) {
  require_lag(x, tau);
  const Matrix s0 = circular_autocov(x.values(), 0);
  for (Eigen::Index i = 0; i < s0.rows(); ++i) {
    if (!(s0(i, i) > 0.0)) {
      throw Error(ErrorCode::zero_variance_series,
                  "series " + std::to_string(i + 1) + " has zero sample variance");
    }
  }
  Matrix r = tau == 0 ? s0 : circular_autocov(x.values(), tau);
  for (Eigen::Index j = 0; j < r.cols(); ++j) {
    for (Eigen::Index i = 0; i < r.rows(); ++i) r(i, j) /= std::sqrt(s0(i, i) * s0(j, j));
  }
  return {tau, std::move(r)};
}

double max_stat(const SeriesMatrix& x, std::int64_t q) {
  require_q(x, q);
  const Vector w = inverse_sd(x.values());
  double best = 0.0;
  for (std::int64_t tau = 1; tau <= q; ++tau) {
    const Matrix s = circular_autocov(x.values(), tau);
    best = std::max(best, (w.asDiagonal() * s * w.asDiagonal()).cwiseAbs().maxCoeff());
  }
  return best;
}

double sum_stat(const SeriesMatrix& x, std::int64_t q) {
  require_q(x, q);
  double total = 0.0;
  for (std::int64_t tau = 1; tau <= q; ++tau) {
    total += circular_autocov(x.values(), tau).squaredNorm();
  }
  return total;
}

double baseline_value(BaselineKind kind, const SeriesMatrix& x, std::int64_t q) {
  return kind == BaselineKind::max_stat ? max_stat(x, q) : sum_stat(x, q);
}

BaselineResult decide(BaselineKind kind, double value, double critical_value) {
  return {kind, value, critical_value, value > critical_value};
}

double empirical_upper_quantile(std::vector<double>& values, double alpha) {
  if (values.empty()) throw Error(ErrorCode::config, "no values to take a quantile of");
  if (alpha >= 1.0) return -std::numeric_limits<double>::infinity();
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  auto rank = static_cast<std::int64_t>(std::ceil((1.0 - alpha) * n - 1e-9));
  rank = std::clamp<std::int64_t>(rank, 1, static_cast<std::int64_t>(values.size()));
  return values[static_cast<std::size_t>(rank - 1)];
}

double calibrate_null(BaselineKind kind, const NullGenerator& null_generator, std::int64_t q,
                      std::int64_t nreps, double alpha, std::uint64_t seed,
                      std::uint64_t cell_id, int threads) {
  if (nreps < kMinCalibrationReps) {
    throw Error(ErrorCode::config, "calibration needs at least " +
                                       std::to_string(kMinCalibrationReps) + " replications");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorCode::config, "alpha must lie in (0, 1]");
  std::vector<double> values(static_cast<std::size_t>(nreps));
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
  detail::ExceptionTrap trap;
#pragma omp parallel for schedule(dynamic, 4) num_threads(nthreads)
  for (std::int64_t r = 0; r < nreps; ++r) {
    trap.capture([&] {
      RandomStream rng = derive_rep_rng(seed, cell_id | stream_domain::calibration,
                                        static_cast<std::uint64_t>(r));
      values[r] = baseline_value(kind, null_generator(rng), q);
    });
  }
  trap.rethrow();
  return empirical_upper_quantile(values, alpha);
}

std::string_view to_string(BaselineKind kind) {
  return kind == BaselineKind::max_stat ? "max_stat" : "sum_stat";
}

}  // namespace hdwn
