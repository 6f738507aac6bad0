#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "algoprob/bitstring.hpp"
#include "algoprob/machines.hpp"

namespace algoprob {

// Where a distribution came from. Serialized verbatim into the JSON
// envelope so that every file can be replayed.
struct Provenance {
  std::string kind;   // "machine", "file", "dna", "image", "uniform", "merged"
  std::string label;  // short display label: TM, CA, TS, HD, DNA, IMG, ...
  std::map<std::string, std::string> params;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// How a bit stream is cut into k-tuples.
enum class WindowMode {
  kSliding,  // every overlapping window, u-k+1 of them
  kBlocks,   // consecutive non-overlapping blocks, trailing partial dropped
};

// Calls fn(code) for each k-window of `bits`. Returns the number of windows.
template <typename Fn>
std::size_t for_each_window(std::span<const std::uint8_t> bits, int k, WindowMode mode, Fn&& fn) {
  const std::size_t kk = static_cast<std::size_t>(k);
  if (bits.size() < kk) return 0;
  const std::uint32_t mask = static_cast<std::uint32_t>((std::uint64_t{1} << k) - 1);
  std::size_t n = 0;
  if (mode == WindowMode::kBlocks) {
    for (std::size_t start = 0; start + kk <= bits.size(); start += kk) {
      std::uint32_t code = 0;
      for (std::size_t i = 0; i < kk; ++i) code = (code << 1) | bits[start + i];
      fn(code);
      ++n;
    }
    return n;
  }
  std::uint32_t code = 0;
  for (std::size_t i = 0; i + 1 < kk; ++i) code = (code << 1) | bits[i];
  for (std::size_t i = kk - 1; i < bits.size(); ++i) {
    code = ((code << 1) | bits[i]) & mask;
    fn(code);
    ++n;
  }
  return n;
}

// All overlapping k-windows of s in order; empty when |s| < k.
std::vector<Tuple> extract_tuples(const BitString& s, int k);

// Mutable accumulator of exact k-tuple counts. Dense storage for small k.
class TupleCounter {
 public:
  explicit TupleCounter(int k);

  int k() const { return k_; }
  void add(std::uint32_t code, std::uint64_t n = 1);
  std::size_t add_windows(std::span<const std::uint8_t> bits, WindowMode mode = WindowMode::kSliding);
  void merge(const TupleCounter& other);
  std::uint64_t total() const { return total_; }
  std::map<std::uint32_t, std::uint64_t> to_map() const;

 private:
  static constexpr int kDenseLimit = 20;
  int k_;
  std::uint64_t total_ = 0;
  std::vector<std::uint64_t> dense_;
  std::map<std::uint32_t, std::uint64_t> sparse_;
};

// Exact integer counts of k-tuples; probabilities derive from them.
class TupleDistribution {
 public:
  using Counts = std::map<std::uint32_t, std::uint64_t>;

  explicit TupleDistribution(int k);
  TupleDistribution(int k, Counts counts, Provenance provenance = {});
  TupleDistribution(const TupleCounter& counter, Provenance provenance = {});

  int k() const { return k_; }
  std::uint64_t total() const { return total_; }
  // Observed tuples only; every stored count is positive.
  const Counts& counts() const { return counts_; }
  std::uint64_t count(Tuple t) const;
  std::uint64_t count(std::uint32_t code) const;
  std::optional<double> probability(Tuple t) const;
  // Probabilities over all 2^k tuples in lexicographic order, absent = 0.
  std::vector<double> probability_vector() const;

  const Provenance& provenance() const { return provenance_; }
  void set_provenance(Provenance p) { provenance_ = std::move(p); }

  friend bool operator==(const TupleDistribution&, const TupleDistribution&) = default;

 private:
  int k_;
  Counts counts_;
  std::uint64_t total_ = 0;
  Provenance provenance_;
};

TupleDistribution aggregate(std::span<const BitString> outputs, int k,
                            WindowMode mode = WindowMode::kSliding);
TupleDistribution aggregate(std::span<const MachineOutput> outputs, int k);

// Sum of counts. Throws MismatchError on differing k.
TupleDistribution merge(const TupleDistribution& a, const TupleDistribution& b);

// Every tuple of {0,1}^k with count 1.
TupleDistribution uniform_distribution(int k);

struct RankedEntry {
  Tuple tuple;
  std::uint64_t count = 0;
  double probability = 0.0;
};

// Sorted by probability descending, ties lexicographically ascending.
struct RankedDistribution {
  int k = 0;
  std::uint64_t total = 0;
  std::vector<RankedEntry> entries;
};

// Throws EmptyInputError when the distribution has no counts.
RankedDistribution rank(const TupleDistribution& d);

// Empirical m(s) = count(s)/total; nullopt when s is not in the support.
std::optional<double> estimate_m(const TupleDistribution& d, Tuple s);
// -log2 of estimate_m; a relative complexity, defined only on the support.
std::optional<double> estimate_K(const TupleDistribution& d, Tuple s);

}  // namespace algoprob
