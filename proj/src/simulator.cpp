#include "hdwn/simulator.hpp"

#include "hdwn/errors.hpp"

#include <cmath>
#include <random>
#include <string>

namespace hdwn {

DiagCoeff coeff_matrix(CoeffKind kind, Eigen::Index p) {
  if (p < 1) throw Error(ErrorCode::invalid_dimension, "coefficient dimension must be >= 1");
  switch (kind) {
    case CoeffKind::dense:
      return {p, static_cast<Eigen::Index>(std::floor(0.95 * static_cast<double>(p))),
              kAlternativeCoeff};
    case CoeffKind::sparse:
      return {p,
              std::max<Eigen::Index>(
                  1, static_cast<Eigen::Index>(std::floor(0.05 * static_cast<double>(p)))),
              kAlternativeCoeff};
    case CoeffKind::identity:
      return {p, p, 1.0};
  }
  throw Error(ErrorCode::config, "unknown coefficient kind");
}

Matrix draw_innovations(InnovationDist dist, Eigen::Index p, Eigen::Index n,
                        RandomStream& rng) {
  if (p < 1 || n < 1) {
    throw Error(ErrorCode::invalid_dimension, "innovation panel must be at least 1 x 1");
  }
  Matrix z(p, n);
  double* out = z.data();
  const Eigen::Index size = p * n;
  if (dist == InnovationDist::gaussian) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Eigen::Index k = 0; k < size; ++k) out[k] = normal(rng);
  } else {
    // shape 4, scale 0.5: mean 2, variance 1, kurtosis 4.5
    std::gamma_distribution<double> gamma(4.0, 0.5);
    for (Eigen::Index k = 0; k < size; ++k) out[k] = gamma(rng) - 2.0;
  }
  return z;
}

namespace {

Matrix mix(const CovarianceModel& cov, Matrix y) {
  if (cov.p() != y.rows()) {
    throw Error(ErrorCode::invalid_dimension, "covariance and panel dimensions differ");
  }
  if (cov.is_identity()) return y;
  return cov.sqrt_sigma0() * y;
}

void check_coeff(const CovarianceModel& cov, const DiagCoeff& coeff) {
  if (coeff.p != cov.p() || coeff.d < 0 || coeff.d > coeff.p) {
    throw Error(ErrorCode::invalid_dimension, "coefficient does not match covariance dimension");
  }
}

}  // namespace

SeriesMatrix apply_null(const CovarianceModel& cov, const Matrix& z) {
  return SeriesMatrix(mix(cov, z));
}

SeriesMatrix apply_var1(const CovarianceModel& cov, const DiagCoeff& coeff,
                        const Matrix& z, Eigen::Index burn_in) {
  check_coeff(cov, coeff);
  if (coeff.d > 0 && std::abs(coeff.value) >= 1.0) {
    throw Error(ErrorCode::nonstationary,
                "VAR(1) coefficient " + std::to_string(coeff.value) + " is not stationary");
  }
  const Eigen::Index T = z.cols() - burn_in;
  if (burn_in < 0 || T < 1) {
    throw Error(ErrorCode::invalid_dimension, "innovation panel shorter than burn-in + 1");
  }
  const Eigen::Index p = z.rows();
  Vector state = Vector::Zero(p);
  Matrix y(p, T);
  for (Eigen::Index t = 0; t < z.cols(); ++t) {
    for (Eigen::Index i = 0; i < p; ++i) {
      const double a = i < coeff.d ? coeff.value : 0.0;
      state(i) = a * state(i) + z(i, t);
    }
    if (t >= burn_in) y.col(t - burn_in) = state;
  }
  return SeriesMatrix(mix(cov, std::move(y)));
}

SeriesMatrix apply_vma1(const CovarianceModel& cov, const DiagCoeff& coeff,
                        const Matrix& z) {
  check_coeff(cov, coeff);
  const Eigen::Index T = z.cols() - 1;
  if (T < 1) throw Error(ErrorCode::invalid_dimension, "VMA(1) needs T + 1 innovation columns");
  const Eigen::Index p = z.rows();
  Matrix w(p, T);
  for (Eigen::Index t = 0; t < T; ++t) {
    for (Eigen::Index i = 0; i < p; ++i) {
      const double a = i < coeff.d ? coeff.value : 0.0;
      w(i, t) = z(i, t + 1) + a * z(i, t);
    }
  }
  return SeriesMatrix(mix(cov, std::move(w)));
}

SeriesMatrix gen_null(const CovarianceModel& cov, InnovationDist dist, Eigen::Index T,
                      RandomStream& rng) {
  return apply_null(cov, draw_innovations(dist, cov.p(), T, rng));
}

SeriesMatrix gen_var1(const CovarianceModel& cov, const DiagCoeff& coeff,
                      InnovationDist dist, Eigen::Index T, RandomStream& rng) {
  check_coeff(cov, coeff);
  if (coeff.d > 0 && std::abs(coeff.value) >= 1.0) {
    throw Error(ErrorCode::nonstationary,
                "VAR(1) coefficient " + std::to_string(coeff.value) + " is not stationary");
  }
  return apply_var1(cov, coeff, draw_innovations(dist, cov.p(), T + kVarBurnIn, rng));
}

SeriesMatrix gen_vma1(const CovarianceModel& cov, const DiagCoeff& coeff,
                      InnovationDist dist, Eigen::Index T, RandomStream& rng) {
  check_coeff(cov, coeff);
  return apply_vma1(cov, coeff, draw_innovations(dist, cov.p(), T + 1, rng));
}

std::string_view to_string(InnovationDist dist) {
  return dist == InnovationDist::gaussian ? "gaussian" : "gamma";
}

std::string_view to_string(CoeffKind kind) {
  switch (kind) {
    case CoeffKind::dense: return "dense";
    case CoeffKind::sparse: return "sparse";
    case CoeffKind::identity: return "identity";
  }
  return "unknown";
}

InnovationDist parse_innovation(std::string_view name) {
  if (name == "gaussian") return InnovationDist::gaussian;
  if (name == "gamma" || name == "shifted_gamma") return InnovationDist::shifted_gamma;
  throw Error(ErrorCode::config, "unknown innovation distribution '" + std::string(name) + "'");
}

CoeffKind parse_coeff_kind(std::string_view name) {
  if (name == "dense") return CoeffKind::dense;
  if (name == "sparse") return CoeffKind::sparse;
  if (name == "identity") return CoeffKind::identity;
  throw Error(ErrorCode::config, "unknown coefficient kind '" + std::string(name) + "'");
}

}  // namespace hdwn
