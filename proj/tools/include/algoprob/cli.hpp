#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "algoprob/errors.hpp"
#include "algoprob/experiment.hpp"
#include "algoprob/ingestion.hpp"
#include "algoprob/stats.hpp"

namespace algoprob::cli {

// Invalid configuration or command line. Exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitRuntime = 4;

struct PhysicalSource {
  SourceKind kind = SourceKind::kFile;
  std::vector<std::filesystem::path> paths;
  IngestOptions options;
};

struct DistributionSpec {
  std::string name;
  std::variant<SampleSpec, PhysicalSource> source;

  bool is_machine() const { return std::holds_alternative<SampleSpec>(source); }
};

// Config document (JSON):
//
//   {
//     "k": [4, 5, 6, 7],
//     "out": "results",
//     "threads": 0,
//     "stats": {"tie_policy": "fractional", "permutations": 10000, "seed": 1},
//     "distributions": [
//       {"name": "TM", "machine": {"class": "TM", "n_states": 3, "mode": "sample",
//                                  "sample_size": 2000, "seed": 1, "steps": 100}},
//       {"name": "HD", "source": {"kind": "file", "paths": ["corpus/"],
//                                 "max_bytes": 1048576, "sample": 100, "seed": 1,
//                                 "windows": "sliding"}}
//     ]
//   }
//
// Every key is optional except the machine class and source kind/paths.
// Names default to the class or source label (TM, CA, TS, HD, DNA, IMG).
// Relative paths resolve against the config file's directory.
struct ExperimentConfig {
  std::vector<DistributionSpec> distributions;
  std::vector<int> ks{4, 5, 6, 7};
  StatsOptions stats;
  unsigned threads = 0;
  std::filesystem::path out = "out";
};

// Command-line values that replace config values. `seed` replaces every
// seed in the config (machine samples, file samples and permutations).
struct Overrides {
  std::optional<std::vector<int>> ks;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> sample_size;
  std::optional<int> steps;
  std::optional<TiePolicy> tie_policy;
  std::optional<std::uint64_t> permutations;
  std::optional<unsigned> threads;
  std::optional<std::filesystem::path> out;
};

ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& file);
void apply_overrides(ExperimentConfig& config, const Overrides& overrides);
// Throws ConfigError: duplicate or unusable names, missing paths, bad k,
// unusable machine specs.
void validate(const ExperimentConfig& config);

// <out>/<name>.k<k>.json (the CSV sits next to it).
std::filesystem::path distribution_path(const std::filesystem::path& out, const std::string& name, int k);

// Each returns the files written, in order. Progress and seeds go to `log`.
std::vector<std::filesystem::path> cmd_generate(const ExperimentConfig& config, std::ostream& log);
std::vector<std::filesystem::path> cmd_ingest(const ExperimentConfig& config, std::ostream& log);

// Compares the named distributions per k. With no explicit inputs, reads
// every configured distribution for every configured k from the output
// directory. Writes <out>/compare/matrix.k<k>.{csv,json} and per-distribution
// series <out>/compare/series/<name>.k<k>.{ranked,lexicographic}.csv.
std::vector<std::filesystem::path> cmd_compare(const ExperimentConfig& config,
                                               const std::vector<std::filesystem::path>& inputs,
                                               std::ostream& log);

struct ScoreRequest {
  std::filesystem::path data;  // distribution JSON, or raw input to ingest
  SourceKind data_kind = SourceKind::kFile;
  std::filesystem::path reference;  // distribution JSON
  std::size_t top = 10;
  std::optional<std::filesystem::path> report;  // default <out>/score.<ref>.k<k>.json
};
std::filesystem::path cmd_score(const ExperimentConfig& config, const ScoreRequest& request, std::ostream& log);

struct CodebookSource {
  std::optional<std::filesystem::path> reference;  // distribution JSON
  std::optional<std::filesystem::path> codebook;   // codebook CSV
};

struct CompressRequest {
  std::filesystem::path input;
  std::filesystem::path output;
  CodebookSource codebook;
  std::optional<std::filesystem::path> codebook_out;
};
// Writes the payload and returns the report as JSON text.
std::string cmd_compress(const CompressRequest& request, std::ostream& log);

struct DecompressRequest {
  std::filesystem::path input;
  std::filesystem::path output;
  CodebookSource codebook;
};
void cmd_decompress(const DecompressRequest& request, std::ostream& log);

// Ranked table with m and K estimates, one section per distribution.
std::string cmd_report(const ExperimentConfig& config, const std::vector<std::filesystem::path>& inputs,
                       std::size_t top);

// Full command line. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace algoprob::cli
