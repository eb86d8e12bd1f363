#pragma once

namespace hdwn {

/// P(Z > z) for standard normal Z.
double normal_upper_tail(double z);

/// Inverse of the standard normal CDF. Throws ErrorCode::invalid_probability
/// unless 0 < prob < 1.
double normal_quantile(double prob);

}  // namespace hdwn
