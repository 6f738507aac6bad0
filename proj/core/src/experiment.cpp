#include "algoprob/experiment.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "algoprob/errors.hpp"
#include "algoprob/random.hpp"

namespace algoprob {

std::uint64_t class_size(const SampleSpec& spec) {
  switch (spec.machine_class) {
    case MachineClass::kTuring:
      return tm_class_size(spec.n_states);
    case MachineClass::kCellular:
      return CaRule::kRuleSpace;
    case MachineClass::kTag:
      return kTagClassSize;
  }
  return 0;
}

void validate(const SampleSpec& spec) {
  if (spec.steps < 1) throw RangeError("steps must be at least 1");
  const std::uint64_t size = class_size(spec);
  if (spec.mode == SampleMode::kSample && spec.sample_size > size) {
    throw RangeError("sample size " + std::to_string(spec.sample_size) + " exceeds the " +
                     machine_class_label(spec.machine_class) + " class size " +
                     std::to_string(size));
  }
}

std::vector<std::uint64_t> select_indices(const SampleSpec& spec) {
  validate(spec);
  const std::uint64_t size = class_size(spec);
  if (spec.mode == SampleMode::kExhaustive) {
    std::vector<std::uint64_t> all(size);
    std::iota(all.begin(), all.end(), std::uint64_t{0});
    return all;
  }
  return sample_without_replacement(size, spec.sample_size, spec.seed);
}

Provenance describe(const SampleSpec& spec) {
  Provenance p;
  p.kind = "machine";
  p.label = machine_class_label(spec.machine_class);
  p.params["class"] = p.label;
  if (spec.machine_class == MachineClass::kTuring) p.params["n_states"] = std::to_string(spec.n_states);
  p.params["mode"] = spec.mode == SampleMode::kExhaustive ? "exhaustive" : "sample";
  if (spec.mode == SampleMode::kSample) p.params["sample_size"] = std::to_string(spec.sample_size);
  p.params["steps"] = std::to_string(spec.steps);
  p.params["class_size"] = std::to_string(class_size(spec));
  p.seed = spec.seed;
  return p;
}

namespace {

// Runs the machines in `indices` and feeds each output to every counter.
void run_range(const SampleSpec& spec, std::span<const std::uint64_t> indices,
               std::vector<TupleCounter>& counters) {
  auto feed = [&](const BitString& bits) {
    for (auto& c : counters) c.add_windows(bits.bits());
  };
  static const BitString kTagInits[] = {BitString::from_string("00"), BitString::from_string("01"),
                                        BitString::from_string("10"), BitString::from_string("11")};
  for (std::uint64_t index : indices) {
    switch (spec.machine_class) {
      case MachineClass::kTuring: {
        const TmRuleTable rules = decode_tm(index, spec.n_states);
        feed(run_tm_raw(rules, 0, spec.steps).visited);
        feed(run_tm_raw(rules, 1, spec.steps).visited);
        break;
      }
      case MachineClass::kCellular: {
        const CaRule rule = decode_ca(index);
        feed(run_ca_row(rule, 0, spec.steps));
        feed(run_ca_row(rule, 1, spec.steps));
        break;
      }
      case MachineClass::kTag: {
        const TagRuleSet rules = decode_tag(index);
        for (const auto& init : kTagInits) feed(run_tag_raw(rules, init, spec.steps).word);
        break;
      }
    }
  }
}

}  // namespace

std::vector<TupleDistribution> machine_experiment(const SampleSpec& spec, std::span<const int> ks,
                                                  ExperimentOptions options) {
  for (int k : ks) check_tuple_width(k);
  const std::vector<std::uint64_t> indices = select_indices(spec);

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(indices.size() / 64 + 1)));

  auto make_counters = [&] {
    std::vector<TupleCounter> cs;
    for (int k : ks) cs.emplace_back(k);
    return cs;
  };

  // Contiguous chunks per worker; counts are summed afterwards, so the
  // result does not depend on the schedule.
  std::vector<std::vector<TupleCounter>> partial(threads);
  const std::size_t chunk = (indices.size() + threads - 1) / threads;
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      partial[w] = make_counters();
      const std::size_t begin = std::min(indices.size(), w * chunk);
      const std::size_t end = std::min(indices.size(), begin + chunk);
      std::span<const std::uint64_t> part(indices.data() + begin, end - begin);
      if (threads == 1) {
        run_range(spec, part, partial[w]);
      } else {
        workers.emplace_back([&spec, part, &counters = partial[w]] { run_range(spec, part, counters); });
      }
    }
  }

  std::vector<TupleDistribution> out;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    TupleCounter total(ks[i]);
    for (const auto& p : partial) total.merge(p[i]);
    out.emplace_back(total, describe(spec));
  }
  return out;
}

TupleDistribution machine_experiment(const SampleSpec& spec, int k, ExperimentOptions options) {
  const int ks[] = {k};
  return std::move(machine_experiment(spec, ks, options).front());
}

}  // namespace algoprob
