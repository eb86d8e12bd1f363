#include "hdwn/verify.hpp"

#include "hdwn/rng.hpp"
#include "hdwn/tuple_sum.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace hdwn {

namespace {

constexpr std::size_t kMaxReportedFailures = 10;

void record(VerifySummary& summary, const std::string& what) {
  ++summary.mismatches;
  if (summary.failures.size() < kMaxReportedFailures) summary.failures.push_back(what);
}

}  // namespace

VerifySummary verify_dp_against_oracle(std::int64_t cases, std::uint64_t seed) {
  VerifySummary summary;
  RandomStream rng = derive_rep_rng(seed, 0, 0);
  std::uniform_int_distribution<std::int64_t> horizon(1, 16);
  std::uniform_int_distribution<int> coin(0, 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::int64_t c = 0; c < cases; ++c) {
    const TupleSpec spec{horizon(rng), 1 + coin(rng), coin(rng) ? 4 : 2};
    std::vector<double> s(static_cast<std::size_t>(spec.T));
    for (double& v : s) v = normal(rng);
    const double dp = dp_tuple_product_sum(s, spec);
    const double brute = brute_tuple_product_sum(s, spec);
    const double err = std::abs(dp - brute) / (1.0 + std::abs(brute));
    summary.max_rel_error = std::max(summary.max_rel_error, err);
    ++summary.cases;
    if (!(err <= 1e-10)) {
      std::ostringstream msg;
      msg << "T=" << spec.T << " q=" << spec.q << " a=" << spec.a << ": dp=" << dp
          << " brute=" << brute;
      record(summary, msg.str());
    }
  }
  return summary;
}

VerifySummary verify_count_identity(std::int64_t max_T, std::int64_t max_q) {
  VerifySummary summary;
  for (std::int64_t q = 1; q <= max_q; ++q) {
    for (std::int64_t a : {2, 4, 6}) {
      for (std::int64_t T = 1; T <= max_T; ++T) {
        const TupleSpec spec{T, q, a};
        const std::vector<double> ones(static_cast<std::size_t>(T), 1.0);
        const double dp = dp_tuple_product_sum(ones, spec);
        const std::uint64_t count = tuple_count(spec);
        ++summary.cases;
        if (dp != static_cast<double>(count)) {
          std::ostringstream msg;
          msg << "T=" << T << " q=" << q << " a=" << a << ": dp=" << dp << " count=" << count;
          record(summary, msg.str());
        }
      }
    }
  }
  return summary;
}

}  // namespace hdwn
