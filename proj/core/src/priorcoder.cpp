#include "algoprob/priorcoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "algoprob/errors.hpp"

namespace algoprob {

namespace {

__extension__ typedef unsigned __int128 UInt128;

constexpr std::uint8_t kMagic[4] = {'A', 'P', 'R', 'C'};

class BitWriter {
 public:
  explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}

  void put(std::uint64_t code, int length) {
    for (int i = length - 1; i >= 0; --i) {
      if (bit_ == 0) out_.push_back(0);
      if ((code >> i) & 1u) out_.back() |= static_cast<std::uint8_t>(0x80u >> bit_);
      bit_ = (bit_ + 1) & 7;
      ++written_;
    }
  }
  std::uint64_t written() const { return written_; }

 private:
  std::vector<std::uint8_t>& out_;
  int bit_ = 0;
  std::uint64_t written_ = 0;
};

inline std::uint8_t bit_at(std::span<const std::uint8_t> bytes, std::uint64_t pos) {
  return (bytes[pos / 8] >> (7 - pos % 8)) & 1u;
}

std::vector<std::uint32_t> block_codes(const BitString& bits, int k) {
  std::vector<std::uint32_t> blocks;
  const std::size_t kk = static_cast<std::size_t>(k);
  blocks.reserve((bits.size() + kk - 1) / kk);
  for (std::size_t start = 0; start < bits.size(); start += kk) {
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < kk; ++i) {
      const std::size_t pos = start + i;
      code = (code << 1) | (pos < bits.size() ? bits[pos] : 0u);
    }
    blocks.push_back(code);
  }
  return blocks;
}

}  // namespace

CodeBook::CodeBook(int k, std::vector<std::uint8_t> lengths) : k_(k), lengths_(std::move(lengths)) {
  if (k < 1 || k > kMaxCodebookWidth) {
    throw RangeError("codebook width k=" + std::to_string(k) + " outside [1, 16]");
  }
  if (lengths_.size() != tuple_universe_size(k)) throw RangeError("codebook needs one length per tuple");
  UInt128 kraft = 0;
  for (auto len : lengths_) {
    if (len < 1 || len > kMaxCodewordLength) throw RangeError("codeword length out of range");
    kraft += static_cast<UInt128>(1) << (kMaxCodewordLength - len);
  }
  if (kraft != static_cast<UInt128>(1) << kMaxCodewordLength) {
    throw RangeError("codeword lengths do not form a complete prefix code");
  }

  symbols_.resize(lengths_.size());
  std::iota(symbols_.begin(), symbols_.end(), std::uint32_t{0});
  std::stable_sort(symbols_.begin(), symbols_.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return lengths_[a] < lengths_[b]; });

  codes_.assign(lengths_.size(), 0);
  first_code_.assign(kMaxCodewordLength + 1, 0);
  first_index_.assign(kMaxCodewordLength + 1, 0);
  count_.assign(kMaxCodewordLength + 1, 0);
  std::uint64_t code = 0;
  int prev_len = lengths_[symbols_.front()];
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const std::uint32_t s = symbols_[i];
    const int len = lengths_[s];
    if (i > 0) {
      ++code;
      code <<= (len - prev_len);
    }
    if (count_[static_cast<std::size_t>(len)] == 0) {
      first_code_[static_cast<std::size_t>(len)] = code;
      first_index_[static_cast<std::size_t>(len)] = static_cast<std::uint32_t>(i);
    }
    ++count_[static_cast<std::size_t>(len)];
    codes_[s] = code;
    prev_len = len;
  }

  std::vector<std::uint8_t> bytes;
  bytes.reserve(lengths_.size() + 1);
  bytes.push_back(static_cast<std::uint8_t>(k_));
  bytes.insert(bytes.end(), lengths_.begin(), lengths_.end());
  digest_ = sha256(bytes);
}

std::string CodeBook::codeword_string(std::uint32_t tuple) const {
  const int len = lengths_[tuple];
  std::string s(static_cast<std::size_t>(len), '0');
  for (int i = 0; i < len; ++i) {
    if ((codes_[tuple] >> (len - 1 - i)) & 1u) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

bool CodeBook::decode_one(std::span<const std::uint8_t> stream_bytes, std::uint64_t stream_bits,
                          std::uint64_t& pos, std::uint32_t& tuple) const {
  std::uint64_t code = 0;
  for (int len = 1; len <= kMaxCodewordLength; ++len) {
    if (pos >= stream_bits) return false;
    code = (code << 1) | bit_at(stream_bytes, pos++);
    const auto l = static_cast<std::size_t>(len);
    if (count_[l] && code >= first_code_[l] && code - first_code_[l] < count_[l]) {
      tuple = symbols_[first_index_[l] + (code - first_code_[l])];
      return true;
    }
  }
  return false;
}

CodeBook build_codebook(const TupleDistribution& reference) {
  const int k = reference.k();
  if (k > kMaxCodebookWidth) {
    throw RangeError("codebook width k=" + std::to_string(k) + " exceeds the limit of 16");
  }
  const std::size_t n = tuple_universe_size(k);
  std::vector<std::uint64_t> weight(n);
  for (std::size_t t = 0; t < n; ++t) weight[t] = reference.count(static_cast<std::uint32_t>(t)) + 1;

  // Huffman merge; nodes ordered by (weight, creation order).
  struct Node {
    std::uint64_t weight;
    std::size_t id;
    bool operator>(const Node& o) const { return weight != o.weight ? weight > o.weight : id > o.id; }
  };
  std::vector<std::size_t> parent(2 * n - 1, 0);
  std::priority_queue<Node, std::vector<Node>, std::greater<>> heap;
  for (std::size_t t = 0; t < n; ++t) heap.push({weight[t], t});
  std::size_t next = n;
  while (heap.size() > 1) {
    const Node a = heap.top();
    heap.pop();
    const Node b = heap.top();
    heap.pop();
    parent[a.id] = next;
    parent[b.id] = next;
    heap.push({a.weight + b.weight, next});
    ++next;
  }
  const std::size_t root = next - 1;
  std::vector<int> depth(2 * n - 1, 0);
  for (std::size_t id = root; id-- > 0;) depth[id] = depth[parent[id]] + 1;

  std::vector<int> lens(depth.begin(), depth.begin() + static_cast<std::ptrdiff_t>(n));
  std::sort(lens.begin(), lens.end());
  if (lens.back() > kMaxCodewordLength) throw RangeError("Huffman code exceeds 64-bit codewords");

  // Shortest codewords to the most frequent tuples.
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), std::uint32_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return weight[a] > weight[b]; });
  std::vector<std::uint8_t> lengths(n);
  for (std::size_t i = 0; i < n; ++i) lengths[order[i]] = static_cast<std::uint8_t>(lens[i]);
  return CodeBook(k, std::move(lengths));
}

std::string codebook_csv(const CodeBook& book) {
  std::string out = "tuple,length\n";
  for (std::size_t t = 0; t < book.size(); ++t) {
    out += Tuple{static_cast<std::uint32_t>(t), book.k()}.to_string() + "," +
           std::to_string(book.length(static_cast<std::uint32_t>(t))) + "\n";
  }
  return out;
}

CodeBook parse_codebook_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "tuple,length") {
    throw DataError("codebook CSV must start with 'tuple,length'");
  }
  std::vector<std::uint8_t> lengths;
  int k = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw DataError("malformed codebook row '" + line + "'");
    const Tuple t = Tuple::from_string(line.substr(0, comma));
    if (k == 0) k = t.k;
    if (t.k != k || t.code != lengths.size()) throw DataError("codebook rows must list every tuple in order");
    int len = 0;
    try {
      len = std::stoi(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw DataError("bad codeword length in '" + line + "'");
    }
    if (len < 1 || len > kMaxCodewordLength) throw DataError("codeword length out of range in '" + line + "'");
    lengths.push_back(static_cast<std::uint8_t>(len));
  }
  if (k == 0) throw DataError("empty codebook");
  try {
    return CodeBook(k, std::move(lengths));
  } catch (const RangeError& e) {
    throw DataError(std::string("invalid codebook: ") + e.what());
  }
}

std::vector<std::uint8_t> encode(const BitString& bits, const CodeBook& book) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.push_back(kPayloadVersion);
  out.push_back(static_cast<std::uint8_t>(book.k()));
  const std::uint64_t n = bits.size();
  for (int i = 7; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(n >> (8 * i)));
  out.insert(out.end(), book.digest().begin(), book.digest().end());
  BitWriter writer(out);
  for (std::uint32_t block : block_codes(bits, book.k())) writer.put(book.codeword(block), book.length(block));
  return out;
}

BitString decode(std::span<const std::uint8_t> payload, const CodeBook& book) {
  if (payload.size() < kPayloadHeaderSize) throw CorruptPayloadError("payload shorter than its header");
  if (!std::equal(std::begin(kMagic), std::end(kMagic), payload.begin())) {
    throw CorruptPayloadError("payload does not start with the APRC magic");
  }
  if (payload[4] != kPayloadVersion) throw CorruptPayloadError("unsupported payload version");
  if (payload[5] != book.k()) {
    throw MismatchError("payload was coded with k=" + std::to_string(payload[5]) + " but the codebook has k=" +
                        std::to_string(book.k()));
  }
  std::uint64_t n = 0;
  for (int i = 0; i < 8; ++i) n = (n << 8) | payload[6 + static_cast<std::size_t>(i)];
  if (!std::equal(book.digest().begin(), book.digest().end(), payload.begin() + 14)) {
    throw MismatchError("payload was coded with a different codebook (digest mismatch)");
  }

  const auto stream = payload.subspan(kPayloadHeaderSize);
  const std::uint64_t stream_bits = static_cast<std::uint64_t>(stream.size()) * 8;
  const auto k = static_cast<std::uint64_t>(book.k());
  const std::uint64_t blocks = (n + k - 1) / k;
  // Every codeword has at least one bit.
  if (blocks > stream_bits) throw CorruptPayloadError("payload truncated");

  std::vector<std::uint8_t> out;
  out.reserve(blocks * k);
  std::uint64_t pos = 0;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    std::uint32_t tuple = 0;
    if (!book.decode_one(stream, stream_bits, pos, tuple)) throw CorruptPayloadError("payload truncated");
    for (int i = book.k() - 1; i >= 0; --i) out.push_back((tuple >> i) & 1u);
  }
  if (stream_bits - pos >= 8) throw CorruptPayloadError("trailing data after the code stream");
  for (std::uint64_t p = pos; p < stream_bits; ++p) {
    if (bit_at(stream, p)) throw CorruptPayloadError("non-zero padding after the code stream");
  }
  for (std::uint64_t p = n; p < out.size(); ++p) {
    if (out[p]) throw CorruptPayloadError("non-zero block padding");
  }
  out.resize(n);
  return BitString(std::move(out));
}

CompressionReport compression_report(const BitString& bits, const CodeBook& book) {
  CompressionReport r;
  r.input_bits = bits.size();
  const auto blocks = block_codes(bits, book.k());
  r.blocks = blocks.size();
  std::vector<std::uint64_t> freq(book.size(), 0);
  for (auto b : blocks) {
    ++freq[b];
    r.code_bits += book.length(b);
  }
  r.payload_bits = kPayloadHeaderSize * 8 + (r.code_bits + 7) / 8 * 8;
  if (r.blocks > 0) {
    r.bits_per_block = static_cast<double>(r.code_bits) / static_cast<double>(r.blocks);
    for (auto f : freq) {
      if (!f) continue;
      const double p = static_cast<double>(f) / static_cast<double>(r.blocks);
      r.block_entropy -= p * std::log2(p);
    }
  }
  return r;
}

}  // namespace algoprob
