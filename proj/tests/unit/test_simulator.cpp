#include "hdwn/errors.hpp"
#include "hdwn/simulator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using hdwn::Matrix;

namespace {

struct Moments {
  double mean, var, kurtosis;
};

Moments moments(const Matrix& z) {
  const double n = static_cast<double>(z.size());
  const double mean = z.mean();
  const auto c = z.array() - mean;
  const double var = c.square().sum() / n;
  const double m4 = c.square().square().sum() / n;
  return {mean, var, m4 / (var * var)};
}

// Sample lag-h autocovariance (non-circular) of rows i and j.
double lag_cov(const Matrix& x, Eigen::Index i, Eigen::Index j, Eigen::Index h) {
  const Eigen::Index T = x.cols();
  double acc = 0.0;
  for (Eigen::Index t = h; t < T; ++t) acc += x(i, t) * x(j, t - h);
  return acc / static_cast<double>(T - h);
}

}  // namespace

TEST(CoeffMatrix, Designs) {
  const auto dense = hdwn::coeff_matrix(hdwn::CoeffKind::dense, 100);
  EXPECT_EQ(dense.d, 95);
  EXPECT_EQ(dense.value, 0.2);
  EXPECT_EQ(hdwn::coeff_matrix(hdwn::CoeffKind::sparse, 50).d, 2);
  EXPECT_EQ(hdwn::coeff_matrix(hdwn::CoeffKind::sparse, 10).d, 1);
  const auto id = hdwn::coeff_matrix(hdwn::CoeffKind::identity, 7);
  EXPECT_EQ(id.d, 7);
  EXPECT_EQ(id.value, 1.0);
}

TEST(Innovations, ShiftedGammaMoments) {
  auto rng = hdwn::derive_rep_rng(1, 0, 0);
  const auto m = moments(hdwn::draw_innovations(hdwn::InnovationDist::shifted_gamma, 1000, 1000, rng));
  EXPECT_NEAR(m.mean, 0.0, 0.005);
  EXPECT_NEAR(m.var, 1.0, 0.01);
  EXPECT_NEAR(m.kurtosis, 4.5, 0.2);
}

TEST(Innovations, GaussianKurtosis) {
  auto rng = hdwn::derive_rep_rng(2, 0, 0);
  const auto m = moments(hdwn::draw_innovations(hdwn::InnovationDist::gaussian, 1000, 1000, rng));
  EXPECT_NEAR(m.mean, 0.0, 0.005);
  EXPECT_NEAR(m.var, 1.0, 0.01);
  EXPECT_NEAR(m.kurtosis, 3.0, 0.1);
}

TEST(GenNull, SampleCovarianceApproachesIdentity) {
  auto rng = hdwn::derive_rep_rng(3, 0, 0);
  const auto x = hdwn::gen_null(hdwn::identity_cov(5), hdwn::InnovationDist::gaussian, 100000, rng);
  const Matrix s = x.values() * x.values().transpose() / 100000.0;
  EXPECT_LE((s - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff(), 0.05);
}

TEST(GenNull, InjectedInnovationIsMappedThroughRoot) {
  Matrix sigma = Matrix::Zero(2, 2);
  sigma(0, 0) = 4.0;
  sigma(1, 1) = 1.0;
  const hdwn::CovarianceModel cov(sigma);
  Matrix z = Matrix::Zero(2, 3);
  z(0, 1) = 1.0;
  const auto x = hdwn::apply_null(cov, z);
  EXPECT_NEAR(x.values()(0, 1), 2.0, 1e-14);
  EXPECT_NEAR(x.values()(1, 1), 0.0, 1e-14);
}

TEST(GenNull, DeterministicForSameSeed) {
  auto cov_rng = hdwn::derive_rep_rng(4, 1, 0);
  const auto cov = hdwn::factor_cov(6, cov_rng);
  auto a = hdwn::derive_rep_rng(4, 0, 0);
  auto b = hdwn::derive_rep_rng(4, 0, 0);
  EXPECT_EQ(hdwn::gen_null(cov, hdwn::InnovationDist::shifted_gamma, 50, a).values(),
            hdwn::gen_null(cov, hdwn::InnovationDist::shifted_gamma, 50, b).values());
}

TEST(GenVar1, ZeroCoefficientDegeneratesToNull) {
  auto rng = hdwn::derive_rep_rng(5, 0, 0);
  const Matrix z = hdwn::draw_innovations(hdwn::InnovationDist::gaussian, 4, 60, rng);
  const auto cov = hdwn::identity_cov(4);
  const hdwn::DiagCoeff zero{4, 4, 0.0};
  const auto var = hdwn::apply_var1(cov, zero, z, 10);
  EXPECT_EQ(var.values(), hdwn::apply_null(cov, z.rightCols(50)).values());
}

TEST(GenVar1, Ar1AutocorrelationMatchesCoefficient) {
  auto rng = hdwn::derive_rep_rng(6, 0, 0);
  const hdwn::DiagCoeff a{1, 1, 0.2};
  const auto x = hdwn::gen_var1(hdwn::identity_cov(1), a, hdwn::InnovationDist::gaussian, 1000000, rng);
  const double rho = lag_cov(x.values(), 0, 0, 1) / lag_cov(x.values(), 0, 0, 0);
  EXPECT_NEAR(rho, 0.2, 0.01);
}

TEST(GenVar1, DenseLagOneAutocovariance) {
  // Population lag-1 autocovariance 0.2 / (1 - 0.04) on the first d
  // components, 0 after; Bartlett standard error for an AR(1).
  const Eigen::Index p = 20;
  const Eigen::Index T = 100000;
  auto rng = hdwn::derive_rep_rng(7, 0, 0);
  const auto coeff = hdwn::coeff_matrix(hdwn::CoeffKind::dense, p);
  const auto x = hdwn::gen_var1(hdwn::identity_cov(p), coeff, hdwn::InnovationDist::gaussian, T, rng);
  for (Eigen::Index i = 0; i < p; ++i) {
    const double rho = i < coeff.d ? 0.2 : 0.0;
    const double g0 = 1.0 / (1.0 - rho * rho);
    const double g1 = rho * g0;
    const double bartlett =
        g0 * g0 * (1 + rho * rho) / (1 - rho * rho) + g0 * g0 * (rho * rho + 2 * rho * rho / (1 - rho * rho));
    const double se = std::sqrt(bartlett / static_cast<double>(T));
    EXPECT_NEAR(lag_cov(x.values(), i, i, 1), g1, 3.0 * se) << "component " << i;
  }
}

TEST(GenVar1, RejectsUnitCoefficient) {
  auto rng = hdwn::derive_rep_rng(8, 0, 0);
  const auto coeff = hdwn::coeff_matrix(hdwn::CoeffKind::identity, 3);
  try {
    hdwn::gen_var1(hdwn::identity_cov(3), coeff, hdwn::InnovationDist::gaussian, 20, rng);
    FAIL();
  } catch (const hdwn::Error& e) {
    EXPECT_EQ(e.code(), hdwn::ErrorCode::nonstationary);
  }
}

TEST(GenVma1, ZeroCoefficientDegeneratesToNull) {
  auto rng = hdwn::derive_rep_rng(9, 0, 0);
  const Matrix z = hdwn::draw_innovations(hdwn::InnovationDist::gaussian, 3, 21, rng);
  const auto cov = hdwn::identity_cov(3);
  EXPECT_EQ(hdwn::apply_vma1(cov, {3, 3, 0.0}, z).values(),
            hdwn::apply_null(cov, z.rightCols(20)).values());
}

TEST(GenVma1, IdentityModelAutocovariances) {
  // x_t = z_t + z_{t-1}: lag-0 covariance 2I, lag-1 covariance I.
  auto rng = hdwn::derive_rep_rng(10, 0, 0);
  const Eigen::Index p = 5;
  const auto x = hdwn::gen_vma1(hdwn::identity_cov(p), hdwn::coeff_matrix(hdwn::CoeffKind::identity, p),
                                hdwn::InnovationDist::gaussian, 100000, rng);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      EXPECT_NEAR(lag_cov(x.values(), i, j, 0), i == j ? 2.0 : 0.0, 0.05);
      EXPECT_NEAR(lag_cov(x.values(), i, j, 1), i == j ? 1.0 : 0.0, 0.05);
    }
  }
}

TEST(GenVma1, DeterministicForSameSeed) {
  const auto cov = hdwn::identity_cov(4);
  const auto coeff = hdwn::coeff_matrix(hdwn::CoeffKind::sparse, 4);
  auto a = hdwn::derive_rep_rng(11, 0, 0);
  auto b = hdwn::derive_rep_rng(11, 0, 0);
  EXPECT_EQ(hdwn::gen_vma1(cov, coeff, hdwn::InnovationDist::gaussian, 30, a).values(),
            hdwn::gen_vma1(cov, coeff, hdwn::InnovationDist::gaussian, 30, b).values());
}

TEST(Generators, AlwaysFinite) {
  std::mt19937_64 pick(12);
  std::uniform_int_distribution<int> dim(1, 8), len(1, 40), which(0, 2), coin(0, 1);
  for (int c = 0; c < 1000; ++c) {
    const Eigen::Index p = dim(pick);
    const Eigen::Index T = len(pick);
    auto rng = hdwn::derive_rep_rng(12, 0, static_cast<std::uint64_t>(c));
    const auto cov = coin(pick) ? hdwn::identity_cov(p) : hdwn::factor_cov(p, rng);
    const auto dist = coin(pick) ? hdwn::InnovationDist::gaussian : hdwn::InnovationDist::shifted_gamma;
    const auto kind = coin(pick) ? hdwn::CoeffKind::dense : hdwn::CoeffKind::sparse;
    const auto coeff = hdwn::coeff_matrix(kind, p);
    hdwn::Matrix x;
    switch (which(pick)) {
      case 0: x = hdwn::gen_null(cov, dist, T, rng).values(); break;
      case 1: x = hdwn::gen_var1(cov, coeff, dist, T, rng).values(); break;
      default: x = hdwn::gen_vma1(cov, coeff, dist, T, rng).values(); break;
    }
    ASSERT_TRUE(x.allFinite());
    ASSERT_EQ(x.rows(), p);
    ASSERT_EQ(x.cols(), T);
  }
}

TEST(Parsing, NamesRoundTrip) {
  EXPECT_EQ(hdwn::parse_innovation("gamma"), hdwn::InnovationDist::shifted_gamma);
  EXPECT_EQ(hdwn::parse_coeff_kind("sparse"), hdwn::CoeffKind::sparse);
  EXPECT_THROW(hdwn::parse_coeff_kind("diag"), hdwn::Error);
}
