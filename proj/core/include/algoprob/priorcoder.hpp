#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "algoprob/bitstring.hpp"
#include "algoprob/digest.hpp"
#include "algoprob/distribution.hpp"

namespace algoprob {

inline constexpr int kMaxCodebookWidth = 16;
inline constexpr int kMaxCodewordLength = 64;

// Canonical prefix code over all 2^k tuples. Codewords are fully determined
// by the per-tuple lengths: sorted by (length, tuple), each codeword is the
// previous one plus one, shifted left on a length increase.
class CodeBook {
 public:
  // Throws RangeError unless the lengths form a complete prefix code
  // (Kraft sum exactly 1) with 1 <= length <= 64.
  CodeBook(int k, std::vector<std::uint8_t> lengths);

  int k() const { return k_; }
  std::size_t size() const { return lengths_.size(); }
  std::uint8_t length(std::uint32_t tuple) const { return lengths_[tuple]; }
  std::uint64_t codeword(std::uint32_t tuple) const { return codes_[tuple]; }
  std::string codeword_string(std::uint32_t tuple) const;
  std::span<const std::uint8_t> lengths() const { return lengths_; }

  // SHA-256 over the byte k followed by every length in tuple order.
  const Sha256& digest() const { return digest_; }

  // Decodes one tuple starting at bit `pos` of `stream`; advances pos.
  // Returns false when the stream ends mid-codeword.
  bool decode_one(std::span<const std::uint8_t> stream_bytes, std::uint64_t stream_bits,
                  std::uint64_t& pos, std::uint32_t& tuple) const;

  friend bool operator==(const CodeBook& a, const CodeBook& b) {
    return a.k_ == b.k_ && a.lengths_ == b.lengths_;
  }

 private:
  int k_;
  std::vector<std::uint8_t> lengths_;
  std::vector<std::uint64_t> codes_;
  // Canonical decoding tables, indexed by length.
  std::vector<std::uint64_t> first_code_;
  std::vector<std::uint32_t> first_index_;
  std::vector<std::uint32_t> count_;
  std::vector<std::uint32_t> symbols_;  // tuples sorted by (length, tuple)
  Sha256 digest_{};
};

// Huffman code over add-one-smoothed counts of every tuple in {0,1}^k.
// Lengths are reassigned so that more frequent tuples never get longer
// codewords (ties by tuple order), which keeps the codebook unique.
CodeBook build_codebook(const TupleDistribution& reference);

// Serialization: "tuple,length" CSV, one row per tuple in lexicographic order.
std::string codebook_csv(const CodeBook& book);
CodeBook parse_codebook_csv(const std::string& csv);

// Payload layout:
//   "APRC"            magic, 4 bytes
//   version           1 byte (1)
//   k                 1 byte
//   bit length        8 bytes, big-endian, of the original input
//   codebook digest   32 bytes
//   code stream       codewords MSB first, zero padded to a byte
inline constexpr std::uint8_t kPayloadVersion = 1;
inline constexpr std::size_t kPayloadHeaderSize = 4 + 1 + 1 + 8 + 32;

// Splits the input into non-overlapping k-blocks (last block zero padded)
// and concatenates their codewords.
std::vector<std::uint8_t> encode(const BitString& bits, const CodeBook& book);

// Throws MismatchError when the payload names another codebook and
// CorruptPayloadError when it is truncated or does not decode cleanly.
BitString decode(std::span<const std::uint8_t> payload, const CodeBook& book);

struct CompressionReport {
  std::uint64_t input_bits = 0;
  std::uint64_t blocks = 0;
  std::uint64_t code_bits = 0;     // codeword bits, before byte padding
  std::uint64_t payload_bits = 0;  // whole payload including header
  double bits_per_block = 0.0;
  double block_entropy = 0.0;  // empirical entropy of the input blocks, bits
};

CompressionReport compression_report(const BitString& bits, const CodeBook& book);

}  // namespace algoprob
