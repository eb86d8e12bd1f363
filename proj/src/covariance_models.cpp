#include "hdwn/covariance_models.hpp"

#include "hdwn/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace hdwn {

namespace {

void require_dimension(Eigen::Index p) {
  if (p < 1) {
    throw Error(ErrorCode::invalid_dimension,
                "dimension must be >= 1, got " + std::to_string(p));
  }
}

}  // namespace

Matrix psd_sqrt(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::invalid_dimension, "psd_sqrt needs a non-empty square matrix");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::not_psd, "psd_sqrt needs a symmetric matrix");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::not_psd, "eigendecomposition failed");
  }
  Vector lambda = eig.eigenvalues();
  if (lambda.minCoeff() < -kPsdTolerance) {
    throw Error(ErrorCode::not_psd,
                "matrix has eigenvalue " + std::to_string(lambda.minCoeff()) +
                    " below -1e-10");
  }
  lambda = lambda.cwiseMax(0.0).cwiseSqrt();
  const Matrix& v = eig.eigenvectors();
  Matrix root = v * lambda.asDiagonal() * v.transpose();
  // Symmetrise exactly; the product is symmetric only up to rounding.
  return 0.5 * (root + root.transpose());
}

CovarianceModel::CovarianceModel(Matrix sigma0) : sigma0_(std::move(sigma0)) {
  sqrt_ = psd_sqrt(sigma0_);
}

CovarianceModel CovarianceModel::identity(Eigen::Index p) {
  require_dimension(p);
  CovarianceModel cov;
  cov.sigma0_ = Matrix::Identity(p, p);
  cov.sqrt_ = Matrix::Identity(p, p);
  cov.identity_ = true;
  return cov;
}

CovarianceModel identity_cov(Eigen::Index p) { return CovarianceModel::identity(p); }

CovarianceModel factor_cov_from(const Matrix& loadings) {
  require_dimension(loadings.rows());
  const double p = static_cast<double>(loadings.rows());
  const Matrix product = (4.0 / p) * (loadings * loadings.transpose());
  Matrix sigma = product.selfadjointView<Eigen::Lower>();
  return CovarianceModel(std::move(sigma));
}

CovarianceModel factor_cov(Eigen::Index p, RandomStream& rng) {
  require_dimension(p);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Matrix a(p, p);
  for (Eigen::Index c = 0; c < p; ++c) {
    for (Eigen::Index r = 0; r < p; ++r) a(r, c) = unif(rng);
  }
  return factor_cov_from(a);
}

SpectralDiagnostics assumption_diagnostics(const CovarianceModel& cov, double threshold) {
  const Matrix abs = cov.sigma0().cwiseAbs();
  SpectralDiagnostics d;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(abs, Eigen::EigenvaluesOnly);
  d.spectral_norm_abs = eig.eigenvalues().cwiseAbs().maxCoeff();
  d.max_row_abs_sum_ratio =
      abs.rowwise().sum().maxCoeff() / std::sqrt(static_cast<double>(cov.p()));
  d.max_abs_entry = abs.maxCoeff();
  d.constant_order_entry_count =
      static_cast<std::size_t>((abs.array() >= threshold).count());
  return d;
}

}  // namespace hdwn
