#include "algoprob/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "algoprob/errors.hpp"

namespace algoprob {

std::vector<Tuple> extract_tuples(const BitString& s, int k) {
  check_tuple_width(k);
  std::vector<Tuple> out;
  for_each_window(s.bits(), k, WindowMode::kSliding,
                  [&](std::uint32_t code) { out.push_back(Tuple{code, k}); });
  return out;
}

TupleCounter::TupleCounter(int k) : k_(k) {
  check_tuple_width(k);
  if (k <= kDenseLimit) dense_.assign(tuple_universe_size(k), 0);
}

void TupleCounter::add(std::uint32_t code, std::uint64_t n) {
  if (n == 0) return;
  if (!dense_.empty()) {
    dense_[code] += n;
  } else {
    sparse_[code] += n;
  }
  total_ += n;
}

std::size_t TupleCounter::add_windows(std::span<const std::uint8_t> bits, WindowMode mode) {
  if (!dense_.empty()) {
    auto* d = dense_.data();
    std::size_t n = for_each_window(bits, k_, mode, [d](std::uint32_t code) { ++d[code]; });
    total_ += n;
    return n;
  }
  return for_each_window(bits, k_, mode, [this](std::uint32_t code) { add(code); });
}

void TupleCounter::merge(const TupleCounter& other) {
  if (other.k_ != k_) throw MismatchError("cannot merge counters with different k");
  if (!dense_.empty()) {
    for (std::size_t i = 0; i < dense_.size(); ++i) dense_[i] += other.dense_[i];
    total_ += other.total_;
  } else {
    for (const auto& [code, n] : other.sparse_) add(code, n);
  }
}

std::map<std::uint32_t, std::uint64_t> TupleCounter::to_map() const {
  if (dense_.empty()) return sparse_;
  std::map<std::uint32_t, std::uint64_t> out;
  for (std::size_t i = 0; i < dense_.size(); ++i) {
    if (dense_[i]) out.emplace_hint(out.end(), static_cast<std::uint32_t>(i), dense_[i]);
  }
  return out;
}

TupleDistribution::TupleDistribution(int k) : k_(k) { check_tuple_width(k); }

TupleDistribution::TupleDistribution(int k, Counts counts, Provenance provenance)
    : k_(k), provenance_(std::move(provenance)) {
  check_tuple_width(k);
  const std::uint64_t universe = tuple_universe_size(k);
  for (const auto& [code, n] : counts) {
    if (code >= universe) throw RangeError("tuple code exceeds 2^k");
    if (n == 0) continue;
    counts_.emplace_hint(counts_.end(), code, n);
    total_ += n;
  }
}

TupleDistribution::TupleDistribution(const TupleCounter& counter, Provenance provenance)
    : TupleDistribution(counter.k(), counter.to_map(), std::move(provenance)) {}

std::uint64_t TupleDistribution::count(std::uint32_t code) const {
  auto it = counts_.find(code);
  return it == counts_.end() ? 0 : it->second;
}

std::uint64_t TupleDistribution::count(Tuple t) const {
  if (t.k != k_) throw MismatchError("tuple width does not match distribution k");
  return count(t.code);
}

std::optional<double> TupleDistribution::probability(Tuple t) const {
  const std::uint64_t n = count(t);
  if (n == 0 || total_ == 0) return std::nullopt;
  return static_cast<double>(n) / static_cast<double>(total_);
}

std::vector<double> TupleDistribution::probability_vector() const {
  std::vector<double> p(tuple_universe_size(k_), 0.0);
  if (total_ == 0) return p;
  for (const auto& [code, n] : counts_) p[code] = static_cast<double>(n) / static_cast<double>(total_);
  return p;
}

TupleDistribution aggregate(std::span<const BitString> outputs, int k, WindowMode mode) {
  TupleCounter counter(k);
  for (const auto& s : outputs) counter.add_windows(s.bits(), mode);
  return TupleDistribution(counter);
}

TupleDistribution aggregate(std::span<const MachineOutput> outputs, int k) {
  TupleCounter counter(k);
  for (const auto& o : outputs) counter.add_windows(o.bits.bits());
  return TupleDistribution(counter);
}

TupleDistribution merge(const TupleDistribution& a, const TupleDistribution& b) {
  if (a.k() != b.k()) {
    throw MismatchError("cannot merge distributions with k=" + std::to_string(a.k()) +
                        " and k=" + std::to_string(b.k()));
  }
  TupleDistribution::Counts counts = a.counts();
  for (const auto& [code, n] : b.counts()) counts[code] += n;
  Provenance p;
  p.kind = "merged";
  p.label = a.provenance().label == b.provenance().label ? a.provenance().label : "";
  return TupleDistribution(a.k(), std::move(counts), std::move(p));
}

TupleDistribution uniform_distribution(int k) {
  check_tuple_width(k);
  TupleDistribution::Counts counts;
  const std::uint64_t n = tuple_universe_size(k);
  for (std::uint64_t code = 0; code < n; ++code) {
    counts.emplace_hint(counts.end(), static_cast<std::uint32_t>(code), 1);
  }
  Provenance p;
  p.kind = "uniform";
  p.label = "UNI";
  return TupleDistribution(k, std::move(counts), std::move(p));
}

RankedDistribution rank(const TupleDistribution& d) {
  if (d.total() == 0) throw EmptyInputError("cannot rank an empty distribution");
  RankedDistribution r;
  r.k = d.k();
  r.total = d.total();
  r.entries.reserve(d.counts().size());
  for (const auto& [code, n] : d.counts()) {
    r.entries.push_back(
        {Tuple{code, d.k()}, n, static_cast<double>(n) / static_cast<double>(d.total())});
  }
  // Integer counts decide the order; ties fall back to the tuple.
  std::stable_sort(r.entries.begin(), r.entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.tuple.code < b.tuple.code;
  });
  return r;
}

std::optional<double> estimate_m(const TupleDistribution& d, Tuple s) {
  if (d.total() == 0) throw EmptyInputError("cannot estimate m from an empty distribution");
  return d.probability(s);
}

std::optional<double> estimate_K(const TupleDistribution& d, Tuple s) {
  auto m = estimate_m(d, s);
  if (!m) return std::nullopt;
  return -std::log2(*m);
}

}  // namespace algoprob
