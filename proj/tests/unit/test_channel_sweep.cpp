#include "hdwn/channel_sweep.hpp"
#include "hdwn/errors.hpp"
#include "hdwn/tuple_sum.hpp"

#include "../oracle.hpp"

#include <gtest/gtest.h>

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

}  // namespace

TEST(ChannelSweep, ChannelCounts) {
  EXPECT_EQ(hdwn::channel_count(hdwn::SweepKind::lagged, 5, 2), 50);
  EXPECT_EQ(hdwn::channel_count(hdwn::SweepKind::contemporaneous, 5, 2), 15);
}

TEST(ChannelSweep, ReferenceChannelsMatchPerChannelRecursion) {
  const auto x = random_panel(3, 20, 1);
  const std::int64_t q = 2;
  const auto sums = hdwn::sweep_reference(x, hdwn::SweepKind::lagged, q, 4);
  std::int64_t c = 0;
  for (std::int64_t tau = 1; tau <= q; ++tau) {
    for (Eigen::Index i = 0; i < 3; ++i) {
      for (Eigen::Index j = 0; j < 3; ++j, ++c) {
        std::vector<double> s(20, 0.0);
        for (Eigen::Index t = tau; t < 20; ++t) s[t] = x.values()(i, t) * x.values()(j, t - tau);
        EXPECT_NEAR(sums.level(4)[c], oracle::tuple_product_sum(s, q, 4), 1e-10);
        EXPECT_NEAR(sums.level(2)[c], oracle::tuple_product_sum(s, q, 2), 1e-10);
      }
    }
  }
}

TEST(ChannelSweep, ContemporaneousTotalCoversAllPairs) {
  const auto x = random_panel(4, 18, 2);
  const auto sums = hdwn::sweep_reference(x, hdwn::SweepKind::contemporaneous, 1, 2);
  double expected = 0.0;
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      std::vector<double> s(18);
      for (Eigen::Index t = 0; t < 18; ++t) s[t] = x.values()(i, t) * x.values()(j, t);
      expected += oracle::tuple_product_sum(s, 1, 2);
    }
  }
  EXPECT_NEAR(sums.total(2), expected, 1e-10 * (1.0 + std::abs(expected)));
}

struct SweepCase {
  Eigen::Index p;
  Eigen::Index T;
  std::int64_t q;
  std::int64_t levels;
};

class KernelEquivalence : public ::testing::TestWithParam<SweepCase> {};

TEST_P(KernelEquivalence, ParallelKernelIsBitIdenticalToReference) {
  const SweepCase c = GetParam();
  const auto x = random_panel(c.p, c.T, static_cast<std::uint64_t>(c.p * 131 + c.T));
  for (auto kind : {hdwn::SweepKind::lagged, hdwn::SweepKind::contemporaneous}) {
    const auto ref = hdwn::sweep_reference(x, kind, c.q, c.levels);
    for (int threads : {1, 2, 3}) {
      const auto par = hdwn::sweep_parallel(x, kind, c.q, c.levels, threads);
      ASSERT_EQ(ref.values.size(), par.values.size());
      EXPECT_EQ(ref.values, par.values) << "threads=" << threads;
      for (std::int64_t k = 1; k <= c.levels; ++k) EXPECT_EQ(ref.total(k), par.total(k));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, KernelEquivalence,
                         ::testing::Values(SweepCase{1, 4, 1, 2}, SweepCase{3, 12, 1, 4},
                                           SweepCase{7, 30, 2, 6}, SweepCase{16, 50, 3, 6},
                                           SweepCase{5, 3, 1, 2}, SweepCase{9, 40, 1, 1}));

TEST(ChannelSweep, CompensatedDotHandlesCancellation) {
  const std::vector<double> v{1e16, 1.0, -1e16, 1.0};
  const std::vector<double> w{1.0, 1.0, 1.0, 1.0};
  EXPECT_EQ(hdwn::compensated_dot(v, w), 2.0);
}

TEST(ChannelSweep, RejectsBadArguments) {
  const auto x = random_panel(2, 10, 3);
  EXPECT_THROW(hdwn::sweep_parallel(x, hdwn::SweepKind::lagged, 0, 2), hdwn::Error);
  EXPECT_THROW(hdwn::sweep_reference(x, hdwn::SweepKind::lagged, 1, 0), hdwn::Error);
}
