#pragma once

#include "hdwn/rng.hpp"
#include "hdwn/series.hpp"

#include <cstddef>

namespace hdwn {

/// Lag-0 covariance Sigma_0 together with its symmetric PSD square root.
class CovarianceModel {
 public:
  /// Validates symmetry and PSD-ness and computes the square root.
  explicit CovarianceModel(Matrix sigma0);

  static CovarianceModel identity(Eigen::Index p);

  Eigen::Index p() const noexcept { return sigma0_.rows(); }
  const Matrix& sigma0() const noexcept { return sigma0_; }
  const Matrix& sqrt_sigma0() const noexcept { return sqrt_; }
  bool is_identity() const noexcept { return identity_; }

 private:
  CovarianceModel() = default;

  Matrix sigma0_;
  Matrix sqrt_;
  bool identity_ = false;
};

struct SpectralDiagnostics {
  double spectral_norm_abs = 0.0;       // || |Sigma_0| ||_2
  double max_row_abs_sum_ratio = 0.0;   // max_i sum_j |s_ij| / sqrt(p)
  double max_abs_entry = 0.0;
  std::size_t constant_order_entry_count = 0;
};

inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kDefaultConstantOrderThreshold = 0.5;

CovarianceModel identity_cov(Eigen::Index p);

/// Sigma_0 = (4/p) A A^T with A_ij ~ U(-1, 1).
CovarianceModel factor_cov(Eigen::Index p, RandomStream& rng);

/// Same construction with an injected loading matrix.
CovarianceModel factor_cov_from(const Matrix& loadings);

/// Symmetric square root via eigendecomposition. Eigenvalues in
/// [-kPsdTolerance, 0) are clamped to zero; anything lower is an error.
Matrix psd_sqrt(const Matrix& m);

/// Advisory only; never used to block a test.
SpectralDiagnostics assumption_diagnostics(
    const CovarianceModel& cov,
    double threshold = kDefaultConstantOrderThreshold);

}  // namespace hdwn
