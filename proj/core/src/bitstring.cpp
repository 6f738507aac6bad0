#include "algoprob/bitstring.hpp"

#include <algorithm>

#include "algoprob/errors.hpp"

namespace algoprob {

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) b = b ? 1 : 0;
}

BitString BitString::from_string(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw DataError("not a binary string: '" + std::string(text) + "'");
    }
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BitString(std::move(bits));
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes) {
  std::vector<std::uint8_t> bits;
  bits.reserve(bytes.size() * 8);
  for (std::uint8_t byte : bytes) {
    for (int i = 7; i >= 0; --i) bits.push_back((byte >> i) & 1);
  }
  return BitString(std::move(bits));
}

void BitString::append(std::span<const std::uint8_t> bits) {
  for (auto b : bits) push_back(b);
}

BitString BitString::complement() const {
  std::vector<std::uint8_t> out(bits_.size());
  std::transform(bits_.begin(), bits_.end(), out.begin(),
                 [](std::uint8_t b) { return static_cast<std::uint8_t>(1 - b); });
  return BitString(std::move(out));
}

BitString BitString::reversed() const {
  return BitString(std::vector<std::uint8_t>(bits_.rbegin(), bits_.rend()));
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = bits_[i] ? '1' : '0';
  return s;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
  std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return out;
}

Tuple Tuple::from_string(std::string_view text) {
  int k = static_cast<int>(text.size());
  check_tuple_width(k);
  std::uint32_t code = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw DataError("not a binary tuple: '" + std::string(text) + "'");
    }
    code = (code << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return Tuple{code, k};
}

std::string Tuple::to_string() const {
  std::string s(static_cast<std::size_t>(k), '0');
  for (int i = 0; i < k; ++i) {
    if ((code >> (k - 1 - i)) & 1u) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

Tuple Tuple::complement() const {
  std::uint32_t mask = static_cast<std::uint32_t>(tuple_universe_size(k) - 1);
  return Tuple{~code & mask, k};
}

Tuple Tuple::reversed() const {
  std::uint32_t out = 0;
  for (int i = 0; i < k; ++i) out |= ((code >> i) & 1u) << (k - 1 - i);
  return Tuple{out, k};
}

void check_tuple_width(int k) {
  if (k < 1 || k > kMaxTupleWidth) {
    throw RangeError("tuple width k=" + std::to_string(k) + " outside [1, " +
                     std::to_string(kMaxTupleWidth) + "]");
  }
}

}  // namespace algoprob
