#include "algoprob/machines.hpp"

#include <limits>
#include <ostream>

#include "algoprob/errors.hpp"

namespace algoprob {

std::string machine_class_label(MachineClass c) {
  switch (c) {
    case MachineClass::kTuring:
      return "TM";
    case MachineClass::kCellular:
      return "CA";
    case MachineClass::kTag:
      return "TS";
  }
  return "?";
}

MachineClass parse_machine_class(const std::string& label) {
  if (label == "TM") return MachineClass::kTuring;
  if (label == "CA") return MachineClass::kCellular;
  if (label == "TS") return MachineClass::kTag;
  throw RangeError("unknown machine class '" + label + "' (expected TM, CA or TS)");
}

// ---------------------------------------------------------------------------
// Turing machines

TmRuleTable::TmRuleTable(int n_states)
    : n_states_(n_states), actions_(static_cast<std::size_t>(2 * n_states)) {
  if (n_states < 1) throw RangeError("a Turing machine needs at least one state");
}

TmRuleTable::TmRuleTable(int n_states, std::vector<TmAction> actions)
    : n_states_(n_states), actions_(std::move(actions)) {
  if (n_states < 1) throw RangeError("a Turing machine needs at least one state");
  if (actions_.size() != static_cast<std::size_t>(2 * n_states)) {
    throw RangeError("rule table must have exactly 2*n_states entries");
  }
  for (const auto& a : actions_) {
    if (a.next_state < 1 || a.next_state > n_states || a.write > 1) {
      throw RangeError("rule table entry out of range");
    }
  }
}

void TmRuleTable::set(int state, int read, TmAction a) {
  if (state < 1 || state > n_states_ || read < 0 || read > 1 || a.next_state < 1 ||
      a.next_state > n_states_ || a.write > 1) {
    throw RangeError("rule table entry out of range");
  }
  actions_[static_cast<std::size_t>((state - 1) * 2 + read)] = a;
}

TmRuleTable TmRuleTable::complemented() const {
  TmRuleTable out(n_states_);
  for (int s = 1; s <= n_states_; ++s) {
    for (int r = 0; r < 2; ++r) {
      TmAction a = action(s, r);
      a.write = static_cast<std::uint8_t>(1 - a.write);
      out.set(s, 1 - r, a);
    }
  }
  return out;
}

TmRuleTable TmRuleTable::mirrored() const {
  TmRuleTable out = *this;
  for (auto& a : out.actions_) {
    a.move = a.move == Direction::kLeft ? Direction::kRight : Direction::kLeft;
  }
  return out;
}

std::uint64_t tm_class_size(int n_states) {
  if (n_states < 1) throw RangeError("a Turing machine needs at least one state");
  const std::uint64_t base = 4 * static_cast<std::uint64_t>(n_states);
  std::uint64_t size = 1;
  for (int i = 0; i < 2 * n_states; ++i) {
    if (size > std::numeric_limits<std::uint64_t>::max() / base) {
      throw RangeError("Turing machine class with " + std::to_string(n_states) +
                       " states is too large to index");
    }
    size *= base;
  }
  return size;
}

TmRuleTable decode_tm(std::uint64_t index, int n_states) {
  const std::uint64_t size = tm_class_size(n_states);
  if (index >= size) {
    throw RangeError("Turing machine index " + std::to_string(index) +
                     " out of range for the " + std::to_string(n_states) +
                     "-state class of size " + std::to_string(size));
  }
  const std::uint64_t base = 4 * static_cast<std::uint64_t>(n_states);
  std::vector<TmAction> actions(static_cast<std::size_t>(2 * n_states));
  for (auto& a : actions) {
    const auto digit = static_cast<unsigned>(index % base);
    index /= base;
    a.write = static_cast<std::uint8_t>(digit % 2);
    a.move = static_cast<Direction>((digit / 2) % 2);
    a.next_state = static_cast<int>(digit / 4) + 1;
  }
  return TmRuleTable(n_states, std::move(actions));
}

std::uint64_t encode_tm(const TmRuleTable& rules) {
  const int n = rules.n_states();
  const std::uint64_t base = 4 * static_cast<std::uint64_t>(n);
  std::uint64_t index = 0;
  for (int j = 2 * n - 1; j >= 0; --j) {
    const TmAction& a = rules.action(j / 2 + 1, j % 2);
    const std::uint64_t digit = a.write + 2u * static_cast<unsigned>(a.move) +
                                4u * static_cast<unsigned>(a.next_state - 1);
    index = index * base + digit;
  }
  return index;
}

TmRun run_tm_raw(const TmRuleTable& rules, std::uint8_t blank, int steps) {
  if (steps < 0) throw RangeError("steps must be non-negative");
  const int origin = steps;
  std::vector<std::uint8_t> tape(static_cast<std::size_t>(2 * steps + 1), blank ? 1 : 0);
  int head = origin;
  int lo = head;
  int hi = head;
  int state = 1;
  for (int t = 0; t < steps; ++t) {
    auto& cell = tape[static_cast<std::size_t>(head)];
    const TmAction& a = rules.action(state, cell);
    cell = a.write;
    head += a.move == Direction::kRight ? 1 : -1;
    state = a.next_state;
    lo = std::min(lo, head);
    hi = std::max(hi, head);
  }
  TmRun run;
  run.visited = BitString(std::vector<std::uint8_t>(tape.begin() + lo, tape.begin() + hi + 1));
  run.head_min = lo - origin;
  run.head_max = hi - origin;
  return run;
}

MachineOutput run_tm(const TmRuleTable& rules, std::uint8_t blank, int steps) {
  MachineOutput out;
  out.bits = run_tm_raw(rules, blank, steps).visited;
  out.machine_class = MachineClass::kTuring;
  out.machine_index = encode_tm(rules);
  out.initial.background = blank ? 1 : 0;
  out.steps = steps;
  return out;
}

// ---------------------------------------------------------------------------
// Cellular automata

CaRule CaRule::conjugate() const {
  std::uint16_t out = 0;
  for (unsigned i = 0; i < 16; ++i) {
    if (!apply(~i & 15u)) out = static_cast<std::uint16_t>(out | (1u << i));
  }
  return CaRule{out};
}

CaRule decode_ca(std::uint64_t index) {
  if (index >= CaRule::kRuleSpace) {
    throw RangeError("cellular automaton index " + std::to_string(index) +
                     " out of range for the class of size 65536");
  }
  return CaRule{static_cast<std::uint16_t>(index)};
}

BitString run_ca_row(CaRule rule, std::uint8_t background, int steps) {
  if (steps < 0) throw RangeError("steps must be non-negative");
  // Buffer covers x in [-steps-3, 2*steps+3]; offset maps x to an index.
  const int offset = steps + 3;
  const std::size_t width = static_cast<std::size_t>(3 * steps + 7);
  std::uint8_t bg = background ? 1 : 0;
  std::vector<std::uint8_t> cur(width, bg);
  std::vector<std::uint8_t> nxt(width, bg);
  cur[static_cast<std::size_t>(offset)] = static_cast<std::uint8_t>(1 - bg);

  for (int s = 0; s < steps; ++s) {
    // Outside the cone [-s, 2s] every cell holds the background's value.
    for (int x = -s - 3; x <= -s - 1; ++x) cur[static_cast<std::size_t>(x + offset)] = bg;
    for (int x = 2 * s + 1; x <= 2 * s + 3; ++x) cur[static_cast<std::size_t>(x + offset)] = bg;

    const int lo = -s - 1;
    const int hi = 2 * s + 2;
    const std::uint8_t* c = cur.data() + offset;
    std::uint8_t* n = nxt.data() + offset;
    unsigned idx = (static_cast<unsigned>(c[lo - 2]) << 2) | (static_cast<unsigned>(c[lo - 1]) << 1) |
                   c[lo];
    for (int x = lo; x <= hi; ++x) {
      idx = ((idx << 1) | c[x + 1]) & 15u;
      n[x] = rule.apply(idx);
    }
    bg = rule.apply(bg ? 15u : 0u);
    cur.swap(nxt);
  }
  return BitString(std::vector<std::uint8_t>(cur.begin() + (offset - steps),
                                             cur.begin() + (offset + 2 * steps + 1)));
}

MachineOutput run_ca(CaRule rule, std::uint8_t background, int steps) {
  MachineOutput out;
  out.bits = run_ca_row(rule, background, steps);
  out.machine_class = MachineClass::kCellular;
  out.machine_index = rule.code;
  out.initial.background = background ? 1 : 0;
  out.steps = steps;
  return out;
}

// ---------------------------------------------------------------------------
// Tag systems

namespace {

// The 15 words of length <= 3 in length-then-lexicographic order.
BitString tag_word(unsigned ordinal) {
  unsigned len = 0;
  unsigned first = 0;  // ordinal of the first word of length `len`
  while (ordinal >= first + (1u << len)) {
    first += 1u << len;
    ++len;
  }
  const unsigned value = ordinal - first;
  std::vector<std::uint8_t> bits(len);
  for (unsigned i = 0; i < len; ++i) bits[i] = (value >> (len - 1 - i)) & 1u;
  return BitString(std::move(bits));
}

unsigned tag_word_ordinal(const BitString& word) {
  if (word.size() > TagRuleSet::kMaxProduction) {
    throw RangeError("tag production longer than 3 symbols");
  }
  unsigned value = 0;
  for (std::size_t i = 0; i < word.size(); ++i) value = (value << 1) | word[i];
  return (1u << word.size()) - 1 + value;
}

}  // namespace

TagRuleSet::TagRuleSet(std::array<BitString, 4> productions) : productions_(std::move(productions)) {
  for (const auto& p : productions_) {
    if (p.size() > kMaxProduction) throw RangeError("tag production longer than 3 symbols");
  }
}

TagRuleSet TagRuleSet::complemented() const {
  std::array<BitString, 4> out;
  for (unsigned block = 0; block < 4; ++block) out[~block & 3u] = productions_[block].complement();
  return TagRuleSet(std::move(out));
}

TagRuleSet decode_tag(std::uint64_t index) {
  if (index >= kTagClassSize) {
    throw RangeError("tag system index " + std::to_string(index) +
                     " out of range for the class of size 50625");
  }
  std::array<BitString, 4> productions;
  for (auto& p : productions) {
    p = tag_word(static_cast<unsigned>(index % 15));
    index /= 15;
  }
  return TagRuleSet(std::move(productions));
}

std::uint64_t encode_tag(const TagRuleSet& rules) {
  std::uint64_t index = 0;
  for (int block = 3; block >= 0; --block) {
    index = index * 15 + tag_word_ordinal(rules.production(static_cast<unsigned>(block)));
  }
  return index;
}

TagRun run_tag_raw(const TagRuleSet& rules, const BitString& init, int max_steps) {
  if (init.size() < 2) throw RangeError("tag system initial string needs at least 2 symbols");
  std::vector<std::uint8_t> word(init.bits().begin(), init.bits().end());
  std::size_t head = 0;
  TagRun run;
  while (run.steps_taken < max_steps) {
    if (word.size() - head < 2) {
      run.halted = true;
      break;
    }
    const unsigned block = (static_cast<unsigned>(word[head]) << 1) | word[head + 1];
    head += 2;
    const auto& p = rules.production(block).bits();
    word.insert(word.end(), p.begin(), p.end());
    ++run.steps_taken;
    if (head > 4096 && head * 2 > word.size()) {
      word.erase(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(head));
      head = 0;
    }
  }
  if (!run.halted && word.size() - head < 2) run.halted = true;
  run.word = BitString(std::vector<std::uint8_t>(word.begin() + static_cast<std::ptrdiff_t>(head), word.end()));
  return run;
}

MachineOutput run_tag(const TagRuleSet& rules, const BitString& init, int max_steps) {
  MachineOutput out;
  out.bits = run_tag_raw(rules, init, max_steps).word;
  out.machine_class = MachineClass::kTag;
  out.machine_index = encode_tag(rules);
  out.initial.tag_init = init;
  out.steps = max_steps;
  return out;
}

// ---------------------------------------------------------------------------
// Printing

std::ostream& operator<<(std::ostream& os, const TmRuleTable& rules) {
  // {read, state, write, next, move}
  for (int s = 1; s <= rules.n_states(); ++s) {
    for (int r = 0; r < 2; ++r) {
      const TmAction& a = rules.action(s, r);
      os << '{' << r << ',' << s << ',' << int{a.write} << ',' << a.next_state << ','
         << (a.move == Direction::kRight ? 'R' : 'L') << "}\n";
    }
  }
  return os;
}

std::ostream& operator<<(std::ostream& os, const CaRule& rule) {
  for (int i = 15; i >= 0; --i) {
    for (int b = 3; b >= 0; --b) os << ((i >> b) & 1);
    os << " -> " << int{rule.apply(static_cast<unsigned>(i))} << '\n';
  }
  return os;
}

std::ostream& operator<<(std::ostream& os, const TagRuleSet& rules) {
  static constexpr const char* kBlocks[] = {"00", "01", "10", "11"};
  for (unsigned b = 0; b < 4; ++b) {
    const auto& p = rules.production(b);
    os << kBlocks[b] << " -> " << (p.empty() ? std::string("e") : p.to_string()) << '\n';
  }
  return os;
}

}  // namespace algoprob
