#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace algoprob {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen because its output sequence
// is fully specified by a few lines of integer arithmetic, so seeded runs
// are reproducible on every platform and standard library.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  // Generator for stream `stream` of a seeded family; used to give each
  // permutation trial or worker an independent, schedule-free sequence.
  static SplitMix64 for_stream(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  // Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

// The SplitMix64 finalizer on its own.
std::uint64_t mix64(std::uint64_t x);

// In-place Fisher-Yates shuffle driven by `rng.below`.
template <typename T>
void shuffle(std::span<T> items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

// Draws `count` distinct integers uniformly from [0, population) using
// Floyd's algorithm; the result is sorted ascending. Throws RangeError
// when count > population.
std::vector<std::uint64_t> sample_without_replacement(std::uint64_t population,
                                                      std::uint64_t count,
                                                      std::uint64_t seed);

}  // namespace algoprob
