#pragma once

#include "hdwn/covariance_models.hpp"
#include "hdwn/rng.hpp"
#include "hdwn/series.hpp"

#include <string_view>

namespace hdwn {

enum class InnovationDist { gaussian, shifted_gamma };

enum class CoeffKind { dense, sparse, identity };

/// A = diag(value, ..., value, 0, ..., 0) with `d` leading nonzeros.
struct DiagCoeff {
  Eigen::Index p = 0;
  Eigen::Index d = 0;
  double value = 0.0;
};

inline constexpr double kAlternativeCoeff = 0.2;
inline constexpr Eigen::Index kVarBurnIn = 50;

DiagCoeff coeff_matrix(CoeffKind kind, Eigen::Index p);

/// p x n matrix of i.i.d. mean-zero, unit-variance draws, filled column by
/// column. Shifted gamma is Gamma(shape 4, scale 0.5) - 2.
Matrix draw_innovations(InnovationDist dist, Eigen::Index p, Eigen::Index n,
                        RandomStream& rng);

// Generators. Each consumes only the stream it is handed.
SeriesMatrix gen_null(const CovarianceModel& cov, InnovationDist dist,
                      Eigen::Index T, RandomStream& rng);
SeriesMatrix gen_var1(const CovarianceModel& cov, const DiagCoeff& coeff,
                      InnovationDist dist, Eigen::Index T, RandomStream& rng);
SeriesMatrix gen_vma1(const CovarianceModel& cov, const DiagCoeff& coeff,
                      InnovationDist dist, Eigen::Index T, RandomStream& rng);

// Deterministic maps from a given innovation panel, used by the generators
// above and directly by tests.

/// x_t = Sigma_0^{1/2} z_t; z has T columns.
SeriesMatrix apply_null(const CovarianceModel& cov, const Matrix& z);
/// y_t = A y_{t-1} + z_t from y = 0, first `burn_in` columns of z discarded.
SeriesMatrix apply_var1(const CovarianceModel& cov, const DiagCoeff& coeff,
                        const Matrix& z, Eigen::Index burn_in = kVarBurnIn);
/// w_t = z_t + A z_{t-1}; z has T + 1 columns (z_0, ..., z_T).
SeriesMatrix apply_vma1(const CovarianceModel& cov, const DiagCoeff& coeff,
                        const Matrix& z);

std::string_view to_string(InnovationDist dist);
std::string_view to_string(CoeffKind kind);
InnovationDist parse_innovation(std::string_view name);
CoeffKind parse_coeff_kind(std::string_view name);

}  // namespace hdwn
