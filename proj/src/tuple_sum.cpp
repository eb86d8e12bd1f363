#include "hdwn/tuple_sum.hpp"

#include "hdwn/errors.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace hdwn {

void TupleSpec::validate() const {
  if (T < 1) throw Error(ErrorCode::config, "T must be >= 1");
  if (q < 1) throw Error(ErrorCode::config, "q must be >= 1");
  if (a < 2 || a % 2 != 0) {
    throw Error(ErrorCode::config, "order a must be an even integer >= 2, got " + std::to_string(a));
  }
}

std::uint64_t tuple_count(const TupleSpec& spec) {
  spec.validate();
  if (spec.T < spec.min_horizon()) return 0;
  const std::uint64_t n = static_cast<std::uint64_t>(spec.T - spec.a * spec.q);
  const std::uint64_t k = static_cast<std::uint64_t>(spec.a);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // c * (n - k + i) / i is C(n - k + i, i), always an integer.
    c = c * (n - k + i) / i;
    if (c > std::numeric_limits<std::uint64_t>::max()) {
      throw Error(ErrorCode::count_overflow,
                  "tuple count C(" + std::to_string(n) + ", " + std::to_string(k) +
                      ") exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(c);
}

double tuple_count_real(const TupleSpec& spec) {
  spec.validate();
  if (spec.T < spec.min_horizon()) return 0.0;
  const long double n = static_cast<long double>(spec.T - spec.a * spec.q);
  const long double k = static_cast<long double>(spec.a);
  long double c = 1.0L;
  for (long double i = 1.0L; i <= k; i += 1.0L) c = c * (n - k + i) / i;
  return static_cast<double>(c);
}

namespace {

void require_oracle_scale(const TupleSpec& spec) {
  std::uint64_t count = 0;
  try {
    count = tuple_count(spec);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::count_overflow) throw;
    count = std::numeric_limits<std::uint64_t>::max();
  }
  if (count > kOracleTupleLimit) {
    throw Error(ErrorCode::oracle_too_large,
                "enumeration oracle limited to " + std::to_string(kOracleTupleLimit) + " tuples");
  }
}

void require_length(std::span<const double> s, std::int64_t T) {
  if (static_cast<std::int64_t>(s.size()) != T) {
    throw Error(ErrorCode::length_mismatch,
                "series length " + std::to_string(s.size()) + " does not match T = " +
                    std::to_string(T));
  }
}

void extend(const TupleSpec& spec, Tuple& current, std::vector<Tuple>& out) {
  if (static_cast<std::int64_t>(current.size()) == spec.a) {
    out.push_back(current);
    return;
  }
  const std::int64_t first = current.empty() ? spec.q + 1 : current.back() + spec.q + 1;
  const std::int64_t remaining = spec.a - static_cast<std::int64_t>(current.size()) - 1;
  // Leave room for the remaining elements, each at least q + 1 further on.
  const std::int64_t last = spec.T - remaining * (spec.q + 1);
  for (std::int64_t t = first; t <= last; ++t) {
    current.push_back(t);
    extend(spec, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<Tuple> enumerate_tuples(const TupleSpec& spec) {
  require_oracle_scale(spec);
  std::vector<Tuple> out;
  out.reserve(tuple_count(spec));
  Tuple current;
  current.reserve(static_cast<std::size_t>(spec.a));
  extend(spec, current, out);
  return out;
}

std::vector<double> dp_tuple_product_levels(std::span<const double> s, std::int64_t q,
                                            std::int64_t max_level) {
  if (q < 1) throw Error(ErrorCode::config, "q must be >= 1");
  if (max_level < 1) throw Error(ErrorCode::config, "max_level must be >= 1");
  const std::int64_t T = static_cast<std::int64_t>(s.size());
  std::vector<double> totals(static_cast<std::size_t>(max_level), 0.0);

  // prefix[t] for t = 0..T, 1-based time; prefix[0] = 0.
  std::vector<double> prev(static_cast<std::size_t>(T + 1), 0.0);
  std::vector<double> curr(static_cast<std::size_t>(T + 1), 0.0);

  for (std::int64_t t = q + 1; t <= T; ++t) prev[t] = prev[t - 1] + s[t - 1];
  totals[0] = prev[T];

  for (std::int64_t k = 2; k <= max_level; ++k) {
    std::fill(curr.begin(), curr.end(), 0.0);
    // The earliest end point of a length-k tuple is k(q + 1).
    for (std::int64_t t = k * (q + 1); t <= T; ++t) {
      curr[t] = curr[t - 1] + s[t - 1] * prev[t - q - 1];
    }
    totals[k - 1] = curr[T];
    std::swap(prev, curr);
  }
  return totals;
}

double dp_tuple_product_sum(std::span<const double> s, const TupleSpec& spec) {
  spec.validate();
  require_length(s, spec.T);
  if (spec.T < spec.min_horizon()) return 0.0;
  return dp_tuple_product_levels(s, spec.q, spec.a).back();
}

double dp_tuple_product_sum_quadratic(std::span<const double> s, const TupleSpec& spec) {
  spec.validate();
  require_length(s, spec.T);
  const std::int64_t T = spec.T;
  const std::int64_t q = spec.q;
  std::vector<double> prev(static_cast<std::size_t>(T + 1), 0.0);
  std::vector<double> curr(static_cast<std::size_t>(T + 1), 0.0);
  for (std::int64_t t = q + 1; t <= T; ++t) prev[t] = s[t - 1];
  for (std::int64_t k = 2; k <= spec.a; ++k) {
    for (std::int64_t t = 1; t <= T; ++t) {
      double acc = 0.0;
      for (std::int64_t r = 1; r <= t - q - 1; ++r) acc += prev[r];
      curr[t] = t > q ? s[t - 1] * acc : 0.0;
    }
    std::swap(prev, curr);
  }
  double total = 0.0;
  for (std::int64_t t = 1; t <= T; ++t) total += prev[t];
  return total;
}

double brute_tuple_product_sum(std::span<const double> s, const TupleSpec& spec) {
  spec.validate();
  require_length(s, spec.T);
  double total = 0.0;
  for (const Tuple& tuple : enumerate_tuples(spec)) {
    double prod = 1.0;
    for (std::int64_t t : tuple) prod *= s[t - 1];
    total += prod;
  }
  return total;
}

}  // namespace hdwn
