#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "algoprob/bitstring.hpp"

namespace algoprob {

enum class MachineClass { kTuring, kCellular, kTag };

// "TM", "CA", "TS".
std::string machine_class_label(MachineClass c);
MachineClass parse_machine_class(const std::string& label);

enum class Direction : std::uint8_t { kLeft = 0, kRight = 1 };

struct TmAction {
  std::uint8_t write = 0;
  Direction move = Direction::kLeft;
  int next_state = 1;  // 1-based

  friend bool operator==(const TmAction&, const TmAction&) = default;
};

// A 2-symbol Turing machine without halting state in 5-tuple form:
// (state, read) -> (write, move, next_state). Total over every pair.
class TmRuleTable {
 public:
  explicit TmRuleTable(int n_states);
  TmRuleTable(int n_states, std::vector<TmAction> actions);

  int n_states() const { return n_states_; }
  const TmAction& action(int state, int read) const {
    return actions_[static_cast<std::size_t>((state - 1) * 2 + read)];
  }
  void set(int state, int read, TmAction a);

  // Same machine with 0 and 1 swapped everywhere.
  TmRuleTable complemented() const;
  // Same machine with L and R swapped.
  TmRuleTable mirrored() const;

  friend bool operator==(const TmRuleTable&, const TmRuleTable&) = default;

 private:
  int n_states_;
  std::vector<TmAction> actions_;  // index (state-1)*2 + read
};

// (4n)^(2n). Throws RangeError when it does not fit in 64 bits.
std::uint64_t tm_class_size(int n_states);

// Index layout: base-4n digits, least significant first; digit j is the
// entry for (state j/2 + 1, read j%2); a digit a decodes as write a%2,
// move (a/2)%2 (0 = L), next state a/4 + 1.
TmRuleTable decode_tm(std::uint64_t index, int n_states);
std::uint64_t encode_tm(const TmRuleTable& rules);

struct TmRun {
  BitString visited;  // cells the head occupied at any time 0..steps
  int head_min = 0;
  int head_max = 0;
};

// Runs exactly `steps` transitions from state 1 on a tape of uniform
// `blank`, head at cell 0.
TmRun run_tm_raw(const TmRuleTable& rules, std::uint8_t blank, int steps);

// 3/2-range binary CA: cell x at t+1 depends on (x-2, x-1, x, x+1) at t,
// read as a 4-bit number with x-2 most significant.
struct CaRule {
  static constexpr int kLeftNeighbors = 2;
  static constexpr int kRightNeighbors = 1;
  static constexpr std::uint32_t kRuleSpace = 65536;

  std::uint16_t code = 0;

  std::uint8_t apply(unsigned neighborhood) const { return (code >> neighborhood) & 1u; }
  // Rule that acts on complemented configurations like this one on the
  // originals.
  CaRule conjugate() const;

  friend bool operator==(const CaRule&, const CaRule&) = default;
};

CaRule decode_ca(std::uint64_t index);

// Row at time `steps` restricted to the influence cone [-steps, 2*steps],
// starting from one cell of value 1-background at x=0.
BitString run_ca_row(CaRule rule, std::uint8_t background, int steps);

// 2-tag system: productions for blocks 00, 01, 10, 11 (index = block value),
// each of length 0..3.
class TagRuleSet {
 public:
  static constexpr int kDeletionNumber = 2;
  static constexpr std::size_t kMaxProduction = 3;

  TagRuleSet() = default;
  explicit TagRuleSet(std::array<BitString, 4> productions);

  const BitString& production(unsigned block) const { return productions_[block]; }
  const std::array<BitString, 4>& productions() const { return productions_; }

  TagRuleSet complemented() const;

  friend bool operator==(const TagRuleSet&, const TagRuleSet&) = default;

 private:
  std::array<BitString, 4> productions_;
};

// 15^4.
inline constexpr std::uint64_t kTagClassSize = 50625;

// Base-15 digits, least significant first, for blocks 00, 01, 10, 11; a
// digit selects a word from e, 0, 1, 00, 01, 10, 11, 000, ..., 111.
TagRuleSet decode_tag(std::uint64_t index);
std::uint64_t encode_tag(const TagRuleSet& rules);

// Final string after `max_steps` iterations or earlier halt (< 2 symbols).
struct TagRun {
  BitString word;
  int steps_taken = 0;
  bool halted = false;
};
TagRun run_tag_raw(const TagRuleSet& rules, const BitString& init, int max_steps);

// Descriptor of how a machine was started, for provenance.
struct InitialCondition {
  std::uint8_t background = 0;  // TM blank symbol, CA background
  BitString tag_init;           // TS only
};

struct MachineOutput {
  BitString bits;
  MachineClass machine_class = MachineClass::kTuring;
  std::uint64_t machine_index = 0;
  InitialCondition initial;
  int steps = 0;
};

MachineOutput run_tm(const TmRuleTable& rules, std::uint8_t blank, int steps);
MachineOutput run_ca(CaRule rule, std::uint8_t background, int steps);
MachineOutput run_tag(const TagRuleSet& rules, const BitString& init, int max_steps);

// Debug printing, one rule per line.
std::ostream& operator<<(std::ostream& os, const TmRuleTable& rules);
std::ostream& operator<<(std::ostream& os, const CaRule& rule);
std::ostream& operator<<(std::ostream& os, const TagRuleSet& rules);

}  // namespace algoprob
