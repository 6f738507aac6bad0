#pragma once

#include <filesystem>
#include <string>

#include "algoprob/distribution.hpp"

namespace algoprob {

// On-disk form of a TupleDistribution: a CSV table of observed tuples
//
//   tuple,count
//   0000,1234
//   ...
//
// in lexicographic order, plus a JSON envelope (format, version, name, k,
// total, distinct, counts_file, counts_sha256, source, seed). Writing a
// distribution that was read back reproduces both files byte for byte.
inline constexpr int kDistributionFormatVersion = 1;

std::string distribution_csv(const TupleDistribution& d);
// `counts_file` is the CSV file name recorded in the envelope.
std::string distribution_envelope(const TupleDistribution& d, const std::string& name,
                                  const std::string& counts_file);

TupleDistribution parse_distribution_csv(const std::string& csv, int k);

// Writes <dir>/<stem>.csv and <dir>/<stem>.json atomically; returns the JSON path.
std::filesystem::path write_distribution(const TupleDistribution& d, const std::string& name,
                                         const std::filesystem::path& dir, const std::string& stem);

struct NamedDistribution {
  std::string name;
  TupleDistribution distribution;
};

// Reads an envelope and its CSV (resolved relative to the envelope),
// verifying version, digest and totals. Throws DataError on any mismatch.
NamedDistribution read_distribution(const std::filesystem::path& json_path);

}  // namespace algoprob
