#include "hdwn/channel_sweep.hpp"

#include "hdwn/errors.hpp"
#include "hdwn/tuple_sum.hpp"
#include "parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace hdwn {

namespace {

struct SweepLayout {
  SweepKind kind;
  std::int64_t p;
  std::int64_t q;
  std::int64_t rows;
  std::int64_t channels;

  SweepLayout(SweepKind k, std::int64_t p_, std::int64_t q_) : kind(k), p(p_), q(q_) {
    if (kind == SweepKind::lagged) {
      rows = q * p;
      channels = rows * p;
    } else {
      rows = p;
      channels = p * (p + 1) / 2;
    }
  }

  std::int64_t lag(std::int64_t row) const {
    return kind == SweepKind::lagged ? row / p + 1 : 0;
  }
  std::int64_t series(std::int64_t row) const { return row % p; }
  // First j of the row and number of channels in it.
  std::int64_t first_j(std::int64_t row) const {
    return kind == SweepKind::lagged ? 0 : series(row);
  }
  std::int64_t width(std::int64_t row) const { return p - first_j(row); }
  std::int64_t offset(std::int64_t row) const {
    if (kind == SweepKind::lagged) return row * p;
    const std::int64_t i = row;
    return i * p - i * (i - 1) / 2;
  }
};

void validate_sweep(const SeriesMatrix& x, std::int64_t q, std::int64_t max_level) {
  if (x.p() < 1 || x.T() < 1) throw Error(ErrorCode::invalid_dimension, "empty panel");
  if (q < 1) throw Error(ErrorCode::config, "q must be >= 1");
  if (max_level < 1) throw Error(ErrorCode::config, "max_level must be >= 1");
}

ChannelSums allocate(const SweepLayout& layout, std::int64_t max_level) {
  ChannelSums out;
  out.channels = layout.channels;
  out.levels = max_level;
  out.values.assign(static_cast<std::size_t>(layout.channels * max_level), 0.0);
  out.weights.assign(static_cast<std::size_t>(layout.channels), 1.0);
  if (layout.kind == SweepKind::contemporaneous) {
    for (std::int64_t row = 0; row < layout.rows; ++row) {
      const std::int64_t off = layout.offset(row);
      for (std::int64_t jj = 1; jj < layout.width(row); ++jj) out.weights[off + jj] = 2.0;
    }
  }
  return out;
}

// One row (tau, i) for all j in a single pass over t. The per-channel
// operation sequence is exactly that of dp_tuple_product_levels:
// P_k(t) = P_k(t-1) + s_t * P_{k-1}(t-q-1).
class RowKernel {
 public:
  RowKernel(std::int64_t p, std::int64_t q, std::int64_t levels)
      : q_(q), levels_(levels), stride_(p) {
    s_.resize(static_cast<std::size_t>(p));
    cur_.resize(static_cast<std::size_t>(levels * p));
    hist_.resize(static_cast<std::size_t>(std::max<std::int64_t>(levels - 1, 0) * (q + 1) * p));
  }

  void run(const Matrix& x, const SweepLayout& layout, std::int64_t row, ChannelSums& out) {
    const std::int64_t tau = layout.lag(row);
    const std::int64_t i = layout.series(row);
    const std::int64_t j0 = layout.first_j(row);
    const std::int64_t w = layout.width(row);
    const std::int64_t T = x.cols();
    std::fill(cur_.begin(), cur_.end(), 0.0);
    std::fill(hist_.begin(), hist_.end(), 0.0);

    for (std::int64_t t = q_ + 1; t <= T; ++t) {
      const std::int64_t slot = t % (q_ + 1);
      const double xi = x(i, t - 1);
      const double* col = x.col(t - 1 - tau).data() + j0;
      double* s = s_.data();
      for (std::int64_t j = 0; j < w; ++j) s[j] = xi * col[j];

      for (std::int64_t k = levels_; k >= 2; --k) {
        const double* below = history(k - 1, slot);
        double* c = current(k);
        if (k < levels_) {
          double* h = history(k, slot);
          for (std::int64_t j = 0; j < w; ++j) {
            c[j] = c[j] + s[j] * below[j];
            h[j] = c[j];
          }
        } else {
          for (std::int64_t j = 0; j < w; ++j) c[j] = c[j] + s[j] * below[j];
        }
      }
      double* c1 = current(1);
      if (levels_ > 1) {
        double* h1 = history(1, slot);
        for (std::int64_t j = 0; j < w; ++j) {
          c1[j] = c1[j] + s[j];
          h1[j] = c1[j];
        }
      } else {
        for (std::int64_t j = 0; j < w; ++j) c1[j] = c1[j] + s[j];
      }
    }

    const std::int64_t off = layout.offset(row);
    for (std::int64_t k = 1; k <= levels_; ++k) {
      double* dst = out.values.data() + (k - 1) * out.channels + off;
      const double* c = current(k);
      for (std::int64_t j = 0; j < w; ++j) dst[j] = c[j];
    }
  }

 private:
  double* current(std::int64_t k) { return cur_.data() + (k - 1) * stride_; }
  double* history(std::int64_t k, std::int64_t slot) {
    return hist_.data() + ((k - 1) * (q_ + 1) + slot) * stride_;
  }

  std::int64_t q_;
  std::int64_t levels_;
  std::int64_t stride_;
  std::vector<double> s_;
  std::vector<double> cur_;
  std::vector<double> hist_;
};

}  // namespace

double ChannelSums::total(std::int64_t k) const { return compensated_dot(level(k), weights); }

std::int64_t channel_count(SweepKind kind, Eigen::Index p, std::int64_t q) {
  return SweepLayout(kind, p, q).channels;
}

double compensated_dot(std::span<const double> v, std::span<const double> w) {
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t c = 0; c < v.size(); ++c) {
    const double term = w[c] * v[c];
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

ChannelSums sweep_reference(const SeriesMatrix& x, SweepKind kind, std::int64_t q,
                            std::int64_t max_level) {
  validate_sweep(x, q, max_level);
  const Matrix& v = x.values();
  const std::int64_t T = x.T();
  const SweepLayout layout(kind, x.p(), q);
  ChannelSums out = allocate(layout, max_level);

  std::vector<double> s(static_cast<std::size_t>(T), 0.0);
  for (std::int64_t row = 0; row < layout.rows; ++row) {
    const std::int64_t tau = layout.lag(row);
    const std::int64_t i = layout.series(row);
    const std::int64_t off = layout.offset(row);
    for (std::int64_t jj = 0; jj < layout.width(row); ++jj) {
      const std::int64_t j = layout.first_j(row) + jj;
      for (std::int64_t t = 1; t <= T; ++t) {
        s[t - 1] = t > tau ? v(i, t - 1) * v(j, t - 1 - tau) : 0.0;
      }
      const std::vector<double> levels = dp_tuple_product_levels(s, q, max_level);
      for (std::int64_t k = 1; k <= max_level; ++k) {
        out.values[(k - 1) * out.channels + off + jj] = levels[k - 1];
      }
    }
  }
  return out;
}

ChannelSums sweep_parallel(const SeriesMatrix& x, SweepKind kind, std::int64_t q,
                           std::int64_t max_level, int threads) {
  validate_sweep(x, q, max_level);
  const Matrix& v = x.values();
  const SweepLayout layout(kind, x.p(), q);
  ChannelSums out = allocate(layout, max_level);
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();

  detail::ExceptionTrap trap;
#pragma omp parallel num_threads(nthreads)
  {
    std::optional<RowKernel> kernel;
    trap.capture([&] { kernel.emplace(layout.p, q, max_level); });
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t row = 0; row < layout.rows; ++row) {
      if (kernel) kernel->run(v, layout, row, out);
    }
  }
  trap.rethrow();
  return out;
}

}  // namespace hdwn
