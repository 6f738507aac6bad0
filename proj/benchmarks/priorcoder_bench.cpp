#include <benchmark/benchmark.h>

#include "algoprob/priorcoder.hpp"
#include "algoprob/random.hpp"

namespace {

using namespace algoprob;

TupleDistribution skewed_reference(int k) {
  SplitMix64 rng(1);
  TupleDistribution::Counts counts;
  for (std::uint32_t c = 0; c < tuple_universe_size(k); ++c) counts[c] = 1 + rng.below(100) * rng.below(100);
  return TupleDistribution(k, counts);
}

BitString random_bits(std::size_t n) {
  SplitMix64 rng(2);
  BitString b;
  for (std::size_t i = 0; i < n; ++i) b.push_back(static_cast<std::uint8_t>(rng.below(2)));
  return b;
}

void BM_BuildCodebook(benchmark::State& state) {
  const auto ref = skewed_reference(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_codebook(ref));
}
BENCHMARK(BM_BuildCodebook)->Arg(4)->Arg(8)->Arg(12);

void BM_Encode(benchmark::State& state) {
  const auto book = build_codebook(skewed_reference(static_cast<int>(state.range(0))));
  const auto bits = random_bits(1 << 20);
  for (auto _ : state) benchmark::DoNotOptimize(encode(bits, book));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bits.size() / 8));
}
BENCHMARK(BM_Encode)->Arg(4)->Arg(8);

void BM_Decode(benchmark::State& state) {
  const auto book = build_codebook(skewed_reference(static_cast<int>(state.range(0))));
  const auto bits = random_bits(1 << 20);
  const auto payload = encode(bits, book);
  for (auto _ : state) benchmark::DoNotOptimize(decode(payload, book));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bits.size() / 8));
}
BENCHMARK(BM_Decode)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
