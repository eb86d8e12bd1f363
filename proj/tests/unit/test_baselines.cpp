#include "hdwn/baselines.hpp"
#include "hdwn/errors.hpp"
#include "hdwn/simulator.hpp"

#include "../oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

namespace {

hdwn::SeriesMatrix random_panel(Eigen::Index p, Eigen::Index T, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  hdwn::Matrix x(p, T);
  for (Eigen::Index t = 0; t < T; ++t)
    for (Eigen::Index i = 0; i < p; ++i) x(i, t) = normal(rng);
  return hdwn::SeriesMatrix(x);
}

hdwn::NullGenerator gaussian_null(Eigen::Index p, Eigen::Index T) {
  return [p, T](hdwn::RandomStream& rng) {
    return hdwn::gen_null(hdwn::identity_cov(p), hdwn::InnovationDist::gaussian, T, rng);
  };
}

}  // namespace

TEST(Autocov, CircularHandExample) {
  // p = 1, x = (1, 2, 3): lag 1 pairs (1,3), (2,1), (3,2).
  hdwn::Matrix v(1, 3);
  v << 1.0, 2.0, 3.0;
  const hdwn::SeriesMatrix x(v);
  EXPECT_DOUBLE_EQ(hdwn::sample_autocov(x, 0).matrix(0, 0), 14.0 / 3.0);
  EXPECT_DOUBLE_EQ(hdwn::sample_autocov(x, 1).matrix(0, 0), 11.0 / 3.0);
  EXPECT_DOUBLE_EQ(hdwn::sample_autocov(x, 2).matrix(0, 0), 11.0 / 3.0);
}

TEST(Autocov, SumOverAllLagsIsOuterProductOfTotals) {
  const auto x = random_panel(3, 11, 1);
  hdwn::Matrix sum = hdwn::Matrix::Zero(3, 3);
  for (std::int64_t tau = 0; tau < 11; ++tau) sum += hdwn::sample_autocov(x, tau).matrix;
  const hdwn::Vector total = x.values().rowwise().sum();
  EXPECT_LE((sum - total * total.transpose() / 11.0).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Autocov, MatchesNaiveLoops) {
  const auto x = random_panel(4, 17, 2);
  for (std::int64_t tau = 0; tau < 5; ++tau) {
    EXPECT_LE((hdwn::sample_autocov(x, tau).matrix - oracle::autocov(x.values(), tau))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
  }
  EXPECT_THROW(hdwn::sample_autocov(x, 17), hdwn::Error);
}

TEST(Autocorr, LagZeroDiagonalIsOne) {
  const auto x = random_panel(5, 30, 3);
  const auto r0 = hdwn::sample_autocorr(x, 0).matrix;
  for (Eigen::Index i = 0; i < 5; ++i) EXPECT_EQ(r0(i, i), 1.0);
  EXPECT_LE(r0.cwiseAbs().maxCoeff(), 1.0 + 1e-15);
}

TEST(Baselines, ScalingBehaviour) {
  const auto x = random_panel(4, 40, 4);
  hdwn::Matrix v = x.values();
  const double scales[] = {0.5, 3.0, 7.0, 1.25};
  for (Eigen::Index i = 0; i < 4; ++i) v.row(i) *= scales[i];
  EXPECT_NEAR(hdwn::max_stat(hdwn::SeriesMatrix(v), 2), hdwn::max_stat(x, 2), 1e-12);

  const double c = 2.5;
  const hdwn::SeriesMatrix y(c * x.values());
  EXPECT_NEAR(hdwn::sum_stat(y, 2), std::pow(c, 4) * hdwn::sum_stat(x, 2), 1e-10 * hdwn::sum_stat(y, 2));
}

TEST(Baselines, ZeroVarianceSeries) {
  hdwn::Matrix v = random_panel(3, 20, 5).values();
  v.row(2).setZero();
  try {
    hdwn::max_stat(hdwn::SeriesMatrix(v), 1);
    FAIL();
  } catch (const hdwn::Error& e) {
    EXPECT_EQ(e.code(), hdwn::ErrorCode::zero_variance_series);
  }
}

TEST(Baselines, EmpiricalQuantileRule) {
  std::vector<double> v;
  for (int k = 100; k >= 1; --k) v.push_back(k);
  EXPECT_EQ(hdwn::empirical_upper_quantile(v, 0.05), 95.0);
  EXPECT_EQ(hdwn::empirical_upper_quantile(v, 1.0), -std::numeric_limits<double>::infinity());
  const auto r = hdwn::decide(hdwn::BaselineKind::max_stat, 95.0, 95.0);
  EXPECT_FALSE(r.reject);
  EXPECT_TRUE(hdwn::decide(hdwn::BaselineKind::max_stat, 95.5, 95.0).reject);
}

TEST(Calibration, RejectionRateAndStability) {
  const auto gen = gaussian_null(5, 60);
  for (auto kind : {hdwn::BaselineKind::max_stat, hdwn::BaselineKind::sum_stat}) {
    const double cv = hdwn::calibrate_null(kind, gen, 1, 2000, 0.05, 77, 0, 2);
    const double cv_loose = hdwn::calibrate_null(kind, gen, 1, 2000, 0.10, 77, 0, 2);
    EXPECT_LE(cv_loose, cv);

    // Independent null draws from another seed.
    const int n = 2000;
    int rejects = 0;
    for (int r = 0; r < n; ++r) {
      auto rng = hdwn::derive_rep_rng(991, 0, static_cast<std::uint64_t>(r));
      rejects += hdwn::baseline_value(kind, gen(rng), 1) > cv;
    }
    const double rate = static_cast<double>(rejects) / n;
    const double sd = std::sqrt(0.05 * 0.95 * (1.0 / n + 1.0 / 2000));
    EXPECT_NEAR(rate, 0.05, 3.0 * sd) << hdwn::to_string(kind);

    const double cv_double = hdwn::calibrate_null(kind, gen, 1, 4000, 0.05, 78, 0, 2);
    EXPECT_NEAR(cv_double, cv, 0.1 * cv) << hdwn::to_string(kind);
  }
}

TEST(Calibration, DeterministicAcrossThreads) {
  const auto gen = gaussian_null(3, 30);
  EXPECT_EQ(hdwn::calibrate_null(hdwn::BaselineKind::sum_stat, gen, 2, 600, 0.05, 5, 3, 1),
            hdwn::calibrate_null(hdwn::BaselineKind::sum_stat, gen, 2, 600, 0.05, 5, 3, 4));
}

TEST(Calibration, TooFewReplications) {
  EXPECT_THROW(hdwn::calibrate_null(hdwn::BaselineKind::max_stat, gaussian_null(2, 10), 1, 499,
                                    0.05, 1),
               hdwn::Error);
}
