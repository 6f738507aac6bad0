#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "algoprob/bitstring.hpp"
#include "algoprob/distribution.hpp"
#include "algoprob/image.hpp"

namespace algoprob {

enum class SourceKind { kFile, kDna, kImage };

std::string source_kind_name(SourceKind kind);  // "file", "dna", "image"
SourceKind parse_source_kind(const std::string& name);
// Display label used in comparison tables: HD, DNA, IMG.
std::string source_kind_label(SourceKind kind);

inline constexpr std::uint64_t kDefaultMaxFileBytes = std::uint64_t{1} << 20;
inline constexpr int kMaxImageLinearPixels = 1500;  // width + height

// One ingested (or rejected) input, as recorded in the manifest.
struct SourceDescriptor {
  SourceKind kind = SourceKind::kFile;
  std::filesystem::path path;
  std::map<std::string, std::string> parameters;
  std::string digest;  // SHA-256 of the raw bytes, hex
  std::uint64_t size = 0;
  std::string status;  // "ok", "skipped:size", "error:<reason>"
};

// One JSON object per line: path, digest, size, status.
std::string manifest_jsonl(std::span<const SourceDescriptor> entries);

// ---------------------------------------------------------------------------
// Raw files

// Bits of the file, most significant bit of each byte first. Throws
// OversizeError above max_bytes and DataError when unreadable.
BitString read_file_bits(const std::filesystem::path& path, std::uint64_t max_bytes = kDefaultMaxFileBytes);

TupleDistribution ingest_file(const std::filesystem::path& path, int k,
                              std::uint64_t max_bytes = kDefaultMaxFileBytes,
                              WindowMode mode = WindowMode::kSliding);

// ---------------------------------------------------------------------------
// DNA

// Maximal runs of A/C/G/T (either case); anything else separates runs.
std::vector<std::string> dna_segments(std::string_view sequence);

// The four one-bit-per-letter encodings, in order
//   e1: G,T -> 1; C,A -> 0     e2: G,C -> 0; T,A -> 1
//   e3: G,C -> 1; T,A -> 0     e4: G,T -> 0; C,A -> 1
// applied per segment. Result[e] holds encoding e's bit strings.
std::array<std::vector<BitString>, 4> dna_encode(std::string_view sequence);

struct FastaRecord {
  std::string header;
  std::string sequence;
};

// Header lines start with '>'; sequence lines are concatenated per record
// with whitespace removed.
std::vector<FastaRecord> parse_fasta(std::string_view text);

TupleDistribution ingest_fasta(const std::filesystem::path& path, int k,
                               WindowMode mode = WindowMode::kSliding);

// ---------------------------------------------------------------------------
// Images

// Throws OversizeError when rows + cols exceeds max_linear_pixels.
TupleDistribution ingest_image(const std::filesystem::path& path, int k,
                               int max_linear_pixels = kMaxImageLinearPixels,
                               WindowMode mode = WindowMode::kSliding);

// ---------------------------------------------------------------------------
// Corpora

struct IngestOptions {
  std::uint64_t max_file_bytes = kDefaultMaxFileBytes;
  int max_linear_pixels = kMaxImageLinearPixels;
  WindowMode mode = WindowMode::kSliding;
  // When set, at most this many files are drawn from the expanded inputs.
  std::optional<std::uint64_t> sample;
  std::uint64_t seed = 0;
};

struct IngestResult {
  std::vector<TupleDistribution> distributions;  // one per requested k
  std::vector<SourceDescriptor> manifest;
};

// Regular files under each path (directories recursively), sorted.
std::vector<std::filesystem::path> expand_inputs(std::span<const std::filesystem::path> paths);

// Ingests every input of the given kind into one merged distribution per k.
// Rejected files are recorded in the manifest and skipped; windows never
// cross file boundaries.
IngestResult ingest_corpus(SourceKind kind, std::span<const std::filesystem::path> paths,
                           std::span<const int> ks, const IngestOptions& options = {});

}  // namespace algoprob
