#include <benchmark/benchmark.h>

#include <numeric>

#include "algoprob/random.hpp"
#include "algoprob/stats.hpp"

namespace {

using namespace algoprob;

std::vector<double> random_values(std::uint64_t seed, std::size_t n, std::uint64_t levels) {
  SplitMix64 rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = static_cast<double>(rng.below(levels));
  return v;
}

void BM_Spearman(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_values(1, n, 50), y = random_values(2, n, 50);
  const auto policy = state.range(1) ? TiePolicy::kFractional : TiePolicy::kStrict;
  for (auto _ : state) benchmark::DoNotOptimize(spearman(x, y, policy));
}
BENCHMARK(BM_Spearman)->Args({16, 0})->Args({16, 1})->Args({128, 1})->Args({4096, 1});

void BM_PermutationTest(benchmark::State& state) {
  const auto x = random_values(3, 16, 1000), y = random_values(4, 16, 1000);
  const double rho = spearman(x, y, TiePolicy::kFractional);
  const PermutationOptions opt{static_cast<std::uint64_t>(state.range(0)), 1, 1};
  for (auto _ : state) benchmark::DoNotOptimize(permutation_test(x, y, rho, TiePolicy::kFractional, opt));
}
BENCHMARK(BM_PermutationTest)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
