#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hdwn {

struct VerifySummary {
  std::int64_t cases = 0;
  std::int64_t mismatches = 0;
  double max_rel_error = 0.0;
  std::vector<std::string> failures;  // first few, for diagnostics

  bool ok() const { return mismatches == 0; }
};

/// Random cases with T <= 16, q in {1, 2}, a in {2, 4}: the prefix-sum
/// recursion against direct enumeration, tolerance 1e-10 relative.
VerifySummary verify_dp_against_oracle(std::int64_t cases, std::uint64_t seed);

/// s = 1 through the recursion against C(T - aq, a) for T <= max_T,
/// q <= max_q, a in {2, 4, 6}, including infeasible horizons.
VerifySummary verify_count_identity(std::int64_t max_T = 60, std::int64_t max_q = 3);

}  // namespace hdwn
