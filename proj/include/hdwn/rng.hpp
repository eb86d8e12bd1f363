#pragma once

#include <cstdint>
#include <random>

namespace hdwn {

using RandomStream = std::mt19937_64;

/// Deterministic stream for replication `rep` of grid cell `cell_id`.
///
/// The triple is hashed with SplitMix64 into a seed sequence, so streams for
/// different triples are independent in practice and the stream a
/// replication sees never depends on which worker runs it or in what order.
RandomStream derive_rep_rng(std::uint64_t master_seed, std::uint64_t cell_id,
                            std::uint64_t rep);

// Stream domains folded into the cell id so that data, calibration and
// design draws for the same cell never share a stream.
namespace stream_domain {
inline constexpr std::uint64_t data = 0;
inline constexpr std::uint64_t calibration = 1ULL << 40;
inline constexpr std::uint64_t design = 2ULL << 40;
}  // namespace stream_domain

}  // namespace hdwn
