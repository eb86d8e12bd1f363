#include "hdwn/normal.hpp"

#include "hdwn/errors.hpp"

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <string>

namespace hdwn {

double normal_upper_tail(double z) {
  if (std::isnan(z)) return z;
  return 0.5 * std::erfc(z / std::sqrt(2.0));
}

double normal_quantile(double prob) {
  if (!(prob > 0.0 && prob < 1.0)) {
    throw Error(ErrorCode::invalid_probability,
                "quantile probability must lie in (0, 1), got " + std::to_string(prob));
  }
  return boost::math::quantile(boost::math::normal_distribution<double>(), prob);
}

}  // namespace hdwn
