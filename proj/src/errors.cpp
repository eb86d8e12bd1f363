#include "hdwn/errors.hpp"

namespace hdwn {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_dimension: return "invalid-dimension";
    case ErrorCode::not_psd: return "not-psd";
    case ErrorCode::nonstationary: return "nonstationary";
    case ErrorCode::length_mismatch: return "length-mismatch";
    case ErrorCode::count_overflow: return "count-overflow";
    case ErrorCode::oracle_too_large: return "oracle-too-large";
    case ErrorCode::insufficient_sample: return "insufficient-sample";
    case ErrorCode::config: return "config";
    case ErrorCode::degenerate_variance: return "degenerate-variance";
    case ErrorCode::zero_variance_series: return "zero-variance-series";
    case ErrorCode::invalid_probability: return "invalid-probability";
    case ErrorCode::parse: return "parse";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

}  // namespace hdwn
