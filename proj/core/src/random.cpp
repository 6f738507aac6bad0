#include "algoprob/random.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "algoprob/errors.hpp"

namespace algoprob {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SplitMix64 SplitMix64::for_stream(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

SplitMix64::result_type SplitMix64::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix64(state_);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  // Reject the top partial bucket so every residue is equally likely.
  const std::uint64_t limit = max() - (max() % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = (*this)();
  } while (x > limit);
  return x % bound;
}

std::vector<std::uint64_t> sample_without_replacement(std::uint64_t population,
                                                      std::uint64_t count,
                                                      std::uint64_t seed) {
  if (count > population) {
    throw RangeError("sample size " + std::to_string(count) +
                     " exceeds population " + std::to_string(population));
  }
  SplitMix64 rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(count * 2);
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::uint64_t j = population - count; j < population; ++j) {
    std::uint64_t t = rng.below(j + 1);
    std::uint64_t pick = chosen.count(t) ? j : t;
    chosen.insert(pick);
    out.push_back(pick);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace algoprob
