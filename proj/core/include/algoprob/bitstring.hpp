#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace algoprob {

// A finite sequence of binary symbols, one byte (0 or 1) per symbol.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::vector<std::uint8_t> bits);

  // Parses a string of '0'/'1' characters. Throws DataError on anything else.
  static BitString from_string(std::string_view text);
  // Unpacks bytes most-significant bit first.
  static BitString from_bytes(std::span<const std::uint8_t> bytes);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  void push_back(std::uint8_t bit) { bits_.push_back(bit ? 1 : 0); }
  void append(std::span<const std::uint8_t> bits);

  BitString complement() const;
  BitString reversed() const;
  std::string to_string() const;
  // Packs most-significant bit first; the last byte is zero padded.
  std::vector<std::uint8_t> to_bytes() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// A k-tuple encoded as an integer whose most significant of k bits is the
// first symbol. For a fixed k, numeric order equals lexicographic order.
struct Tuple {
  std::uint32_t code = 0;
  int k = 0;

  static Tuple from_string(std::string_view text);
  std::string to_string() const;
  Tuple complement() const;
  Tuple reversed() const;

  friend auto operator<=>(const Tuple&, const Tuple&) = default;
};

// Largest tuple width the library accepts anywhere.
inline constexpr int kMaxTupleWidth = 24;

// Throws RangeError unless 1 <= k <= kMaxTupleWidth.
void check_tuple_width(int k);

inline std::uint64_t tuple_universe_size(int k) { return std::uint64_t{1} << k; }

}  // namespace algoprob
