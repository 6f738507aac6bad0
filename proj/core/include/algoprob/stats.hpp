#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "algoprob/distribution.hpp"

namespace algoprob {

enum class TiePolicy {
  // Strict ranks by (value desc, position asc), then 1 - 6 sum(d^2) / (n(n^2-1)).
  kStrict,
  // Average ranks for ties, Pearson correlation of the rank vectors.
  kFractional,
};

std::string tie_policy_name(TiePolicy p);  // "strict", "fractional"
TiePolicy parse_tie_policy(const std::string& name);

// Two distributions over the common universe of all 2^k tuples in
// lexicographic order; tuples absent from a distribution get probability 0.
struct PairedRanking {
  int k = 0;
  std::vector<double> x;
  std::vector<double> y;

  std::size_t n() const { return x.size(); }
};

// Throws MismatchError when the two k differ.
PairedRanking join(const TupleDistribution& a, const TupleDistribution& b);

// Rank 1 is the largest value; equal values are ordered by position.
std::vector<double> strict_ranks(std::span<const double> values);
// Rank 1 is the largest value; equal values share their mean rank.
std::vector<double> average_ranks(std::span<const double> values);

std::vector<double> ranks(std::span<const double> values, TiePolicy policy);

// Throws UndefinedCorrelationError for n < 2 or (fractional) a constant
// rank vector, MismatchError for unequal lengths.
double spearman(std::span<const double> x, std::span<const double> y, TiePolicy policy);
double spearman(const PairedRanking& p, TiePolicy policy);

struct PermutationOptions {
  std::uint64_t permutations = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Two-sided permutation p-value, (#{|rho_perm| >= |rho_obs|} + 1) / (N + 1).
// Trial i shuffles the y ranks with a generator derived from (seed, i), so
// the value does not depend on the thread count.
double permutation_test(std::span<const double> x, std::span<const double> y, double rho_obs,
                        TiePolicy policy, const PermutationOptions& options);
double permutation_test(const PairedRanking& p, double rho_obs, TiePolicy policy,
                        const PermutationOptions& options);

struct CorrelationResult {
  double rho = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
  TiePolicy tie_policy = TiePolicy::kFractional;
  std::uint64_t permutations = 0;
  std::uint64_t seed = 0;
};

struct StatsOptions {
  TiePolicy tie_policy = TiePolicy::kFractional;
  std::uint64_t permutations = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

CorrelationResult correlate(const PairedRanking& p, const StatsOptions& options);

enum class Significance { kNone, kWeak, kStrong };

// kStrong for p <= 0.01, kWeak for 0.01 < p <= 0.10.
Significance significance(double p_value);
// "", "†" or "‡".
std::string marker(Significance s);

struct MatrixCell {
  std::optional<CorrelationResult> result;
  std::string note;  // why `result` is absent
};

struct CorrelationMatrix {
  int k = 0;
  std::vector<std::string> names;
  std::vector<std::vector<MatrixCell>> cells;
  StatsOptions options;
};

// Pairwise correlations of every pair (including each with itself). The
// matrix is symmetric by construction: cell (j, i) copies cell (i, j).
CorrelationMatrix correlation_matrix(std::span<const std::string> names,
                                     std::span<const TupleDistribution> dists, const StatsOptions& options);

// Tables with distribution names as row and column labels and cells like
// "0.3700†"; absent cells are "NA".
std::string matrix_csv(const CorrelationMatrix& m);
std::string matrix_json(const CorrelationMatrix& m);

// Plot series. Ranked: rank,tuple,probability from most to least frequent
// (observed tuples). Lexicographic: index,tuple,probability over all 2^k.
std::string ranked_series_csv(const TupleDistribution& d);
std::string lexicographic_series_csv(const TupleDistribution& d);

// Half the L1 distance between the two probability vectors over 2^k tuples.
double total_variation(const TupleDistribution& a, const TupleDistribution& b);

struct AlgorithmicityReport {
  std::optional<CorrelationResult> correlation;  // rho(d, ref)
  std::string correlation_note;
  double tv_reference = 0.0;  // TV(d, ref)
  double tv_uniform = 0.0;    // TV(d, uniform)
  // TV(d, ref) < TV(d, uniform).
  bool closer_to_reference = false;
};

AlgorithmicityReport algorithmicity_score(const TupleDistribution& d, const TupleDistribution& ref,
                                          const StatsOptions& options);

}  // namespace algoprob
