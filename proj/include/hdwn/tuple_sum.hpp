#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hdwn {

/// Shape of the gap-constrained tuple set: strictly increasing a-tuples
/// (t_1, ..., t_a) over {q+1, ..., T} whose consecutive gaps exceed q.
struct TupleSpec {
  std::int64_t T = 0;
  std::int64_t q = 0;
  std::int64_t a = 0;

  /// Throws ErrorCode::config unless T >= 1, q >= 1 and a is even and >= 2.
  void validate() const;

  /// Smallest horizon with a nonempty tuple set, a*q + a.
  std::int64_t min_horizon() const { return a * q + a; }
};

using Tuple = std::vector<std::int64_t>;

inline constexpr std::uint64_t kOracleTupleLimit = 1'000'000;

/// C(T - aq, a) when T >= aq + a, else 0. Exact; throws
/// ErrorCode::count_overflow if the count does not fit in 64 bits.
std::uint64_t tuple_count(const TupleSpec& spec);

/// The same count as a double, valid for horizons where the exact count
/// overflows. Used for normalisation.
double tuple_count_real(const TupleSpec& spec);

/// Every tuple, 1-based, in lexicographic order. Throws
/// ErrorCode::oracle_too_large above kOracleTupleLimit tuples.
std::vector<Tuple> enumerate_tuples(const TupleSpec& spec);

/// Sum over the tuple set of prod_k s[t_k] (s is 1-based in the contract,
/// s[0] is time 1). O(aT) time, two rolling prefix vectors.
double dp_tuple_product_sum(std::span<const double> s, const TupleSpec& spec);

/// Same recursion, returning the sums for every tuple length 1..max_level in
/// one pass (entry k-1 is the length-k sum). Lengths need not be even here.
std::vector<double> dp_tuple_product_levels(std::span<const double> s,
                                            std::int64_t q,
                                            std::int64_t max_level);

/// The recursion without prefix sums, O(aT^2). Kept for benchmarks.
double dp_tuple_product_sum_quadratic(std::span<const double> s,
                                      const TupleSpec& spec);

/// Direct sum over enumerate_tuples(spec).
double brute_tuple_product_sum(std::span<const double> s, const TupleSpec& spec);

}  // namespace hdwn
