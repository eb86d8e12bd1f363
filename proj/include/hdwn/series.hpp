#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace hdwn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// p x T observation panel. Column t-1 holds x_t (time is 1-based in every
/// interface, 0-based in storage).
class SeriesMatrix {
 public:
  SeriesMatrix() = default;

  /// Throws ErrorCode::invalid_dimension for an empty panel and
  /// ErrorCode::config if any entry is non-finite.
  explicit SeriesMatrix(Matrix values);

  Eigen::Index p() const noexcept { return values_.rows(); }
  Eigen::Index T() const noexcept { return values_.cols(); }

  const Matrix& values() const noexcept { return values_; }

  // x_{i,t} with 1-based i and t.
  double at(Eigen::Index i, Eigen::Index t) const { return values_(i - 1, t - 1); }

 private:
  Matrix values_;
};

}  // namespace hdwn
