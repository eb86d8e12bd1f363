#pragma once

#include "hdwn/series.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace hdwn {

// Channel sweeps evaluate the constrained tuple-product sum for every
// channel of a panel and reduce over channels.
//
//   lagged          channel (tau, i, j), s_t = x_{i,t} x_{j,t-tau}, tau = 1..q
//   contemporaneous channel (i, j) with i <= j, s_t = x_{i,t} x_{j,t};
//                   off-diagonal channels carry weight 2 (the sum is
//                   symmetric in i and j)
//
// Channel index order is tau-major, then i, then j. Both kernels write one
// value per (level, channel) into the same slot and reduce in that fixed
// order, so their totals are bit-identical and independent of thread count.
enum class SweepKind { lagged, contemporaneous };

struct ChannelSums {
  std::int64_t channels = 0;
  std::int64_t levels = 0;
  // values[(k - 1) * channels + c] is the length-k sum for channel c.
  std::vector<double> values;
  std::vector<double> weights;

  std::span<const double> level(std::int64_t k) const {
    return {values.data() + (k - 1) * channels, static_cast<std::size_t>(channels)};
  }

  /// Weighted channel total for tuple length k, compensated summation in
  /// channel order.
  double total(std::int64_t k) const;
};

std::int64_t channel_count(SweepKind kind, Eigen::Index p, std::int64_t q);

/// Serial reference: one channel at a time through dp_tuple_product_levels.
ChannelSums sweep_reference(const SeriesMatrix& x, SweepKind kind,
                            std::int64_t q, std::int64_t max_level);

/// Batched kernel: for each (tau, i) row, runs the recursion for all j at
/// once in a single pass over t with a ring buffer of the last q + 1 prefix
/// values per level. Rows are distributed with OpenMP; `threads` <= 0 uses
/// the runtime default.
ChannelSums sweep_parallel(const SeriesMatrix& x, SweepKind kind,
                           std::int64_t q, std::int64_t max_level,
                           int threads = 0);

/// Neumaier-compensated sum of w[c] * v[c] in index order.
double compensated_dot(std::span<const double> v, std::span<const double> w);

}  // namespace hdwn
