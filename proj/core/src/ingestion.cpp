#include "algoprob/ingestion.hpp"

#include <algorithm>
#include <cctype>
#include <json.hpp>

#include "algoprob/digest.hpp"
#include "algoprob/errors.hpp"
#include "algoprob/io.hpp"
#include "algoprob/random.hpp"

namespace algoprob {

namespace fs = std::filesystem;

std::string source_kind_name(SourceKind kind) {
  switch (kind) {
    case SourceKind::kFile:
      return "file";
    case SourceKind::kDna:
      return "dna";
    case SourceKind::kImage:
      return "image";
  }
  return "?";
}

SourceKind parse_source_kind(const std::string& name) {
  if (name == "file") return SourceKind::kFile;
  if (name == "dna") return SourceKind::kDna;
  if (name == "image") return SourceKind::kImage;
  throw RangeError("unknown source kind '" + name + "' (expected file, dna or image)");
}

std::string source_kind_label(SourceKind kind) {
  switch (kind) {
    case SourceKind::kFile:
      return "HD";
    case SourceKind::kDna:
      return "DNA";
    case SourceKind::kImage:
      return "IMG";
  }
  return "?";
}

std::string manifest_jsonl(std::span<const SourceDescriptor> entries) {
  std::string out;
  for (const auto& e : entries) {
    nlohmann::json line = nlohmann::json::object();
    line["path"] = e.path.generic_string();
    line["digest"] = e.digest;
    line["size"] = e.size;
    line["status"] = e.status;
    out += line.dump();
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Raw files

namespace {

void check_file_size(const fs::path& path, std::uint64_t size, std::uint64_t max_bytes) {
  if (size > max_bytes) {
    throw OversizeError(path.string() + " is " + std::to_string(size) + " bytes, above the " +
                        std::to_string(max_bytes) + "-byte cap");
  }
}

Provenance source_provenance(SourceKind kind, WindowMode mode) {
  Provenance p;
  p.kind = source_kind_name(kind);
  p.label = source_kind_label(kind);
  p.params["windows"] = mode == WindowMode::kSliding ? "sliding" : "blocks";
  return p;
}

}  // namespace

BitString read_file_bits(const fs::path& path, std::uint64_t max_bytes) {
  std::error_code ec;
  const auto size = fs::file_size(path, ec);
  if (ec) throw DataError("cannot read " + path.string() + ": " + ec.message());
  check_file_size(path, size, max_bytes);
  const auto bytes = read_bytes(path);
  check_file_size(path, bytes.size(), max_bytes);
  return BitString::from_bytes(bytes);
}

TupleDistribution ingest_file(const fs::path& path, int k, std::uint64_t max_bytes, WindowMode mode) {
  TupleCounter counter(k);
  counter.add_windows(read_file_bits(path, max_bytes).bits(), mode);
  Provenance p = source_provenance(SourceKind::kFile, mode);
  p.params["max_bytes"] = std::to_string(max_bytes);
  return TupleDistribution(counter, std::move(p));
}

// ---------------------------------------------------------------------------
// DNA

namespace {

// Bit per encoding for one nucleotide, or -1 for a gap. Columns e1..e4.
int dna_bit(char c, int encoding) {
  // A, C, G, T rows.
  static constexpr int kTable[4][4] = {
      {0, 1, 0, 1},  // A
      {0, 0, 1, 1},  // C
      {1, 0, 1, 0},  // G
      {1, 1, 0, 0},  // T
  };
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'A':
      return kTable[0][encoding];
    case 'C':
      return kTable[1][encoding];
    case 'G':
      return kTable[2][encoding];
    case 'T':
      return kTable[3][encoding];
    default:
      return -1;
  }
}

}  // namespace

std::vector<std::string> dna_segments(std::string_view sequence) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : sequence) {
    if (dna_bit(c, 0) >= 0) {
      cur.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::array<std::vector<BitString>, 4> dna_encode(std::string_view sequence) {
  std::array<std::vector<BitString>, 4> out;
  for (const auto& segment : dna_segments(sequence)) {
    for (int e = 0; e < 4; ++e) {
      std::vector<std::uint8_t> bits(segment.size());
      for (std::size_t i = 0; i < segment.size(); ++i) bits[i] = static_cast<std::uint8_t>(dna_bit(segment[i], e));
      out[static_cast<std::size_t>(e)].emplace_back(std::move(bits));
    }
  }
  return out;
}

std::vector<FastaRecord> parse_fasta(std::string_view text) {
  std::vector<FastaRecord> records;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.front() == '>') {
      std::string header(line.substr(1));
      while (!header.empty() && (header.back() == '\r' || header.back() == ' ')) header.pop_back();
      records.push_back({std::move(header), {}});
      continue;
    }
    std::string seq;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) seq.push_back(c);
    }
    if (seq.empty()) continue;
    if (records.empty()) records.push_back({});
    records.back().sequence += seq;
  }
  return records;
}

namespace {

void add_fasta(const std::string& text, const fs::path& path, std::vector<TupleCounter>& counters,
               WindowMode mode) {
  const auto records = parse_fasta(text);
  if (records.empty()) throw DataError(path.string() + ": no sequence records found");
  for (const auto& record : records) {
    for (const auto& encoding : dna_encode(record.sequence)) {
      for (const auto& bits : encoding) {
        for (auto& c : counters) c.add_windows(bits.bits(), mode);
      }
    }
  }
}

void add_image(const GrayImage& image, const fs::path& path, int max_linear_pixels,
               std::vector<TupleCounter>& counters, WindowMode mode) {
  if (image.rows + image.cols > max_linear_pixels) {
    throw OversizeError(path.string() + " is " + std::to_string(image.cols) + "x" +
                        std::to_string(image.rows) + ", above the " + std::to_string(max_linear_pixels) +
                        " linear-pixel cap");
  }
  const Binarization b = binarize(image);
  for (int r = 0; r < b.bits.rows; ++r) {
    for (auto& c : counters) c.add_windows(b.bits.row(r), mode);
  }
}

}  // namespace

TupleDistribution ingest_fasta(const fs::path& path, int k, WindowMode mode) {
  std::vector<TupleCounter> counters;
  counters.emplace_back(k);
  add_fasta(read_text(path), path, counters, mode);
  return TupleDistribution(counters.front(), source_provenance(SourceKind::kDna, mode));
}

TupleDistribution ingest_image(const fs::path& path, int k, int max_linear_pixels, WindowMode mode) {
  std::vector<TupleCounter> counters;
  counters.emplace_back(k);
  add_image(read_pnm(path), path, max_linear_pixels, counters, mode);
  Provenance p = source_provenance(SourceKind::kImage, mode);
  p.params["max_linear_pixels"] = std::to_string(max_linear_pixels);
  return TupleDistribution(counters.front(), std::move(p));
}

// ---------------------------------------------------------------------------
// Corpora

std::vector<fs::path> expand_inputs(std::span<const fs::path> paths) {
  std::vector<fs::path> out;
  for (const auto& p : paths) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      for (const auto& entry : fs::recursive_directory_iterator(p, ec)) {
        if (entry.is_regular_file()) out.push_back(entry.path());
      }
      if (ec) throw DataError("cannot list " + p.string() + ": " + ec.message());
    } else if (fs::is_regular_file(p, ec)) {
      out.push_back(p);
    } else {
      throw DataError("no such file or directory: " + p.string());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IngestResult ingest_corpus(SourceKind kind, std::span<const fs::path> paths, std::span<const int> ks,
                           const IngestOptions& options) {
  std::vector<fs::path> files = expand_inputs(paths);
  if (options.sample && *options.sample < files.size()) {
    std::vector<fs::path> picked;
    for (auto i : sample_without_replacement(files.size(), *options.sample, options.seed)) {
      picked.push_back(files[static_cast<std::size_t>(i)]);
    }
    files = std::move(picked);
  }

  std::vector<TupleCounter> counters;
  for (int k : ks) counters.emplace_back(k);

  IngestResult result;
  for (const auto& path : files) {
    SourceDescriptor entry;
    entry.kind = kind;
    entry.path = path;
    std::vector<std::uint8_t> bytes;
    try {
      bytes = read_bytes(path);
    } catch (const DataError&) {
      entry.status = "error:read";
      result.manifest.push_back(std::move(entry));
      continue;
    }
    entry.size = bytes.size();
    entry.digest = to_hex(sha256(bytes));

    // Per-file counters so a failing file contributes nothing.
    std::vector<TupleCounter> local;
    for (int k : ks) local.emplace_back(k);
    try {
      switch (kind) {
        case SourceKind::kFile: {
          check_file_size(path, bytes.size(), options.max_file_bytes);
          const BitString bits = BitString::from_bytes(bytes);
          for (auto& c : local) c.add_windows(bits.bits(), options.mode);
          break;
        }
        case SourceKind::kDna:
          add_fasta(std::string(bytes.begin(), bytes.end()), path, local, options.mode);
          break;
        case SourceKind::kImage:
          add_image(parse_pnm(bytes), path, options.max_linear_pixels, local, options.mode);
          break;
      }
      entry.status = "ok";
      for (std::size_t i = 0; i < counters.size(); ++i) counters[i].merge(local[i]);
    } catch (const OversizeError&) {
      entry.status = "skipped:size";
    } catch (const DataError&) {
      entry.status = "error:data";
    }
    result.manifest.push_back(std::move(entry));
  }

  Provenance p = source_provenance(kind, options.mode);
  std::size_t ok = 0;
  for (const auto& e : result.manifest) ok += e.status == "ok";
  p.params["files"] = std::to_string(ok);
  if (kind == SourceKind::kFile) p.params["max_bytes"] = std::to_string(options.max_file_bytes);
  if (kind == SourceKind::kImage) p.params["max_linear_pixels"] = std::to_string(options.max_linear_pixels);
  if (options.sample) {
    p.params["sample"] = std::to_string(*options.sample);
    p.seed = options.seed;
  }
  for (const auto& c : counters) result.distributions.emplace_back(c, p);
  return result;
}

}  // namespace algoprob
