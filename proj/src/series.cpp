#include "hdwn/series.hpp"

#include "hdwn/errors.hpp"

namespace hdwn {

SeriesMatrix::SeriesMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() == 0 || values_.cols() == 0) {
    throw Error(ErrorCode::invalid_dimension, "series panel must have p >= 1 and T >= 1");
  }
  if (!values_.allFinite()) {
    throw Error(ErrorCode::config, "series panel contains non-finite values");
  }
}

}  // namespace hdwn
