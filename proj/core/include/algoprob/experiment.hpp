#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "algoprob/distribution.hpp"
#include "algoprob/machines.hpp"

namespace algoprob {

enum class SampleMode { kExhaustive, kSample };

// Which machines to run and for how long.
struct SampleSpec {
  MachineClass machine_class = MachineClass::kTuring;
  int n_states = 3;  // TM only
  SampleMode mode = SampleMode::kSample;
  std::uint64_t sample_size = 2000;
  std::uint64_t seed = 0;
  int steps = 100;
};

std::uint64_t class_size(const SampleSpec& spec);

// Throws RangeError for an unusable spec (sample larger than the class,
// non-positive steps, bad state count).
void validate(const SampleSpec& spec);

// Machine indices selected by the spec, ascending. Exhaustive mode yields
// 0..size-1; sample mode draws uniformly without replacement.
std::vector<std::uint64_t> select_indices(const SampleSpec& spec);

// Provenance record describing the spec.
Provenance describe(const SampleSpec& spec);

struct ExperimentOptions {
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

// Runs every selected machine under both initial conditions (TM: blank 0
// and blank 1; CA: single 1 on 0s and single 0 on 1s; TS: all four 2-bit
// initial strings) and aggregates the overlapping k-windows of all outputs.
// One distribution per requested k, in the order given.
std::vector<TupleDistribution> machine_experiment(const SampleSpec& spec, std::span<const int> ks,
                                                  ExperimentOptions options = {});
TupleDistribution machine_experiment(const SampleSpec& spec, int k, ExperimentOptions options = {});

}  // namespace algoprob
