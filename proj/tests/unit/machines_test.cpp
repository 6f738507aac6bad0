#include "algoprob/machines.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "algoprob/errors.hpp"
#include "algoprob/random.hpp"
#include "oracles.hpp"

namespace algoprob {
namespace {

TEST(TuringMachine, ClassSizes) {
  EXPECT_EQ(tm_class_size(1), 16u);
  EXPECT_EQ(tm_class_size(2), 4096u);
  EXPECT_EQ(tm_class_size(3), 2985984u);
  EXPECT_THROW(tm_class_size(0), RangeError);
}

TEST(TuringMachine, DecodeZeroIsAllWriteZeroMoveLeftStateOne) {
  const TmRuleTable t = decode_tm(0, 2);
  for (int s = 1; s <= 2; ++s) {
    for (int r = 0; r < 2; ++r) {
      EXPECT_EQ(t.action(s, r), (TmAction{0, Direction::kLeft, 1}));
    }
  }
}

TEST(TuringMachine, DecodeOutOfRangeNamesClassSize) {
  try {
    decode_tm(2985984, 3);
    FAIL() << "expected RangeError";
  } catch (const RangeError& e) {
    EXPECT_NE(std::string(e.what()).find("2985984"), std::string::npos);
  }
}

TEST(TuringMachine, DecodeMatchesDigitOracle) {
  SplitMix64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t index = rng.below(tm_class_size(3));
    const TmRuleTable t = decode_tm(index, 3);
    const auto ref = oracle::decode_tm(index, 3);
    for (int s = 1; s <= 3; ++s) {
      for (int r = 0; r < 2; ++r) {
        const auto& e = ref[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(r)];
        EXPECT_EQ(t.action(s, r).write, e.write);
        EXPECT_EQ(t.action(s, r).move == Direction::kRight, e.right);
        EXPECT_EQ(t.action(s, r).next_state, e.next);
      }
    }
  }
}

TEST(TuringMachine, RoundTripRandomThreeState) {
  SplitMix64 rng(1);
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t index = rng.below(tm_class_size(3));
    EXPECT_EQ(encode_tm(decode_tm(index, 3)), index);
  }
}

TEST(TuringMachine, RoundTripExhaustiveTwoState) {
  for (std::uint64_t i = 0; i < tm_class_size(2); ++i) ASSERT_EQ(encode_tm(decode_tm(i, 2)), i);
}

TEST(TuringMachine, WriteOneMoveRightTrace) {
  TmRuleTable t(1);
  t.set(1, 0, {1, Direction::kRight, 1});
  t.set(1, 1, {1, Direction::kRight, 1});
  EXPECT_EQ(run_tm(t, 0, 2).bits.to_string(), "110");
}

TEST(TuringMachine, BlankOverBlank) {
  TmRuleTable t(2);
  for (int s = 1; s <= 2; ++s) {
    for (int r = 0; r < 2; ++r) t.set(s, r, {0, Direction::kLeft, 1});
  }
  EXPECT_EQ(run_tm(t, 0, 4).bits.to_string(), "00000");
}

TEST(TuringMachine, RandomRunsAgreeWithSparseTapeOracle) {
  SplitMix64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t index = rng.below(tm_class_size(3));
    const int blank = static_cast<int>(rng.below(2));
    const MachineOutput out = run_tm(decode_tm(index, 3), static_cast<std::uint8_t>(blank), 100);
    EXPECT_GE(out.bits.size(), 1u);
    EXPECT_LE(out.bits.size(), 101u);
    EXPECT_EQ(out.bits.to_string(), oracle::run_tm(oracle::decode_tm(index, 3), blank, 100));
    EXPECT_EQ(out.machine_index, index);
  }
}

TEST(TuringMachine, ComplementAndMirrorClosure) {
  SplitMix64 rng(9);
  for (int i = 0; i < 500; ++i) {
    const TmRuleTable t = decode_tm(rng.below(tm_class_size(3)), 3);
    for (std::uint8_t b = 0; b < 2; ++b) {
      const BitString out = run_tm(t, b, 100).bits;
      EXPECT_EQ(run_tm(t.complemented(), static_cast<std::uint8_t>(1 - b), 100).bits, out.complement());
      EXPECT_EQ(run_tm(t.mirrored(), b, 100).bits, out.reversed());
    }
    EXPECT_LT(encode_tm(t.complemented()), tm_class_size(3));
  }
}

TEST(TuringMachine, PrintsOneRulePerLine) {
  std::ostringstream os;
  os << decode_tm(0, 1);
  EXPECT_EQ(os.str(), "{0,1,0,1,L}\n{1,1,0,1,L}\n");
}

TEST(CellularAutomaton, ConstantRules) {
  EXPECT_EQ(run_ca(CaRule{65535}, 0, 100).bits.to_string(), std::string(301, '1'));
  EXPECT_EQ(run_ca(CaRule{0}, 0, 100).bits.to_string(), std::string(301, '0'));
}

TEST(CellularAutomaton, DecodeRange) {
  EXPECT_EQ(decode_ca(65535).code, 65535);
  EXPECT_THROW(decode_ca(65536), RangeError);
}

TEST(CellularAutomaton, WidthIsConeWidth) {
  SplitMix64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const CaRule r{static_cast<std::uint16_t>(rng.below(65536))};
    EXPECT_EQ(run_ca(r, static_cast<std::uint8_t>(i % 2), 100).bits.size(), 301u);
  }
}

TEST(CellularAutomaton, ConeMatchesWideCyclicSimulation) {
  SplitMix64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto code = static_cast<std::uint16_t>(rng.below(65536));
    for (int bg = 0; bg < 2; ++bg) {
      EXPECT_EQ(run_ca_row(CaRule{code}, static_cast<std::uint8_t>(bg), 30).to_string(),
                oracle::run_ca_cyclic(code, bg, 30))
          << "rule " << code << " background " << bg;
    }
  }
}

TEST(CellularAutomaton, NonQuiescentBackgroundIsTracked) {
  // Uniform 0 neighborhood maps to 1, uniform 1 maps to 0: the background
  // blinks, so cells far from the seed alternate every step.
  const std::uint16_t code = 0x0001;
  for (int t = 1; t <= 6; ++t) {
    EXPECT_EQ(run_ca_row(CaRule{code}, 0, t).to_string(), oracle::run_ca_cyclic(code, 0, t));
  }
}

TEST(CellularAutomaton, ConjugateClosure) {
  for (std::uint32_t code = 0; code < 65536; code += 97) {
    const CaRule r{static_cast<std::uint16_t>(code)};
    EXPECT_EQ(r.conjugate().conjugate(), r);
    for (std::uint8_t b = 0; b < 2; ++b) {
      EXPECT_EQ(run_ca_row(r.conjugate(), static_cast<std::uint8_t>(1 - b), 40), run_ca_row(r, b, 40).complement());
    }
  }
}

TEST(TagSystem, DecodeExtremes) {
  for (const auto& p : decode_tag(0).productions()) EXPECT_TRUE(p.empty());
  for (const auto& p : decode_tag(kTagClassSize - 1).productions()) EXPECT_EQ(p.to_string(), "111");
  EXPECT_THROW(decode_tag(kTagClassSize), RangeError);
  EXPECT_EQ(kTagClassSize, 15u * 15u * 15u * 15u);
}

TEST(TagSystem, DigitOrderIsLengthThenLexicographic) {
  // Digit d for block 00 is the d-th word in e,0,1,00,01,10,11,000,...
  const char* words[] = {"", "0", "1", "00", "01", "10", "11", "000", "001", "010", "011", "100", "101", "110", "111"};
  for (unsigned d = 0; d < 15; ++d) EXPECT_EQ(decode_tag(d).production(0).to_string(), words[d]);
  EXPECT_EQ(decode_tag(15).production(1).to_string(), "0");
  EXPECT_EQ(decode_tag(15 * 15 * 15 * 14).production(3).to_string(), "111");
}

TEST(TagSystem, RoundTripExhaustive) {
  for (std::uint64_t i = 0; i < kTagClassSize; ++i) ASSERT_EQ(encode_tag(decode_tag(i)), i);
}

TEST(TagSystem, EmptyProductionsHalt) {
  const TagRun run = run_tag_raw(decode_tag(0), BitString::from_string("00"), 100);
  EXPECT_TRUE(run.word.empty());
  EXPECT_TRUE(run.halted);
  EXPECT_EQ(run.steps_taken, 1);
}

TEST(TagSystem, GrowingTrace) {
  const TagRuleSet rules({BitString::from_string("111"), BitString::from_string("0"), BitString::from_string("0"),
                          BitString::from_string("111")});
  const BitString init = BitString::from_string("11");
  // Each step deletes "11" and appends "111".
  EXPECT_EQ(run_tag(rules, init, 1).bits.to_string(), "111");
  EXPECT_EQ(run_tag(rules, init, 2).bits.to_string(), "1111");
  EXPECT_EQ(run_tag(rules, init, 4).bits.to_string(), "111111");
  EXPECT_EQ(run_tag(rules, init, 5).bits.to_string(), "1111111");
}

TEST(TagSystem, RandomRunsAgreeWithStringOracle) {
  SplitMix64 rng(8);
  const char* inits[] = {"00", "01", "10", "11"};
  for (int i = 0; i < 2000; ++i) {
    const TagRuleSet rules = decode_tag(rng.below(kTagClassSize));
    std::vector<std::string> prods;
    for (const auto& p : rules.productions()) prods.push_back(p.to_string());
    const std::string init = inits[i % 4];
    EXPECT_EQ(run_tag(rules, BitString::from_string(init), 100).bits.to_string(),
              oracle::run_tag(prods, init, 100));
  }
}

TEST(TagSystem, ComplementClosure) {
  SplitMix64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const TagRuleSet rules = decode_tag(rng.below(kTagClassSize));
    const BitString init = BitString::from_string(i % 2 ? "01" : "11");
    EXPECT_EQ(run_tag(rules.complemented(), init.complement(), 100).bits,
              run_tag(rules, init, 100).bits.complement());
  }
}

TEST(TagSystem, RejectsShortInitialString) {
  EXPECT_THROW(run_tag(decode_tag(0), BitString::from_string("1"), 10), RangeError);
}

TEST(MachineClassLabels, RoundTrip) {
  for (auto c : {MachineClass::kTuring, MachineClass::kCellular, MachineClass::kTag}) {
    EXPECT_EQ(parse_machine_class(machine_class_label(c)), c);
  }
  EXPECT_THROW(parse_machine_class("XX"), RangeError);
}

}  // namespace
}  // namespace algoprob
