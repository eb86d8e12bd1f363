#include "hdwn/rng.hpp"

#include <array>

namespace hdwn {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream derive_rep_rng(std::uint64_t master_seed, std::uint64_t cell_id,
                            std::uint64_t rep) {
  std::uint64_t state = master_seed;
  std::uint64_t h = splitmix64(state);
  state = h ^ cell_id;
  h = splitmix64(state);
  state = h ^ rep;

  std::array<std::uint32_t, 8> words{};
  for (std::size_t k = 0; k < words.size(); k += 2) {
    const std::uint64_t v = splitmix64(state);
    words[k] = static_cast<std::uint32_t>(v);
    words[k + 1] = static_cast<std::uint32_t>(v >> 32);
  }
  std::seed_seq seq(words.begin(), words.end());
  return RandomStream(seq);
}

}  // namespace hdwn
