#pragma once

#include <stdexcept>
#include <string>

namespace hdwn {

enum class ErrorCode {
  invalid_dimension,
  not_psd,
  nonstationary,
  length_mismatch,
  count_overflow,
  oracle_too_large,
  insufficient_sample,
  config,
  degenerate_variance,
  zero_variance_series,
  invalid_probability,
  parse,
  io,
};

const char* to_string(ErrorCode code);

// Every library failure carries a code so callers (the CLI, the study
// driver) can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hdwn
