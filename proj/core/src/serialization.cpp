#include "algoprob/serialization.hpp"

#include <json.hpp>
#include <sstream>

#include "algoprob/digest.hpp"
#include "algoprob/errors.hpp"
#include "algoprob/io.hpp"

namespace algoprob {

using nlohmann::json;

namespace {

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw DataError("bad " + what + " '" + s + "'");
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw DataError("bad " + what + " '" + s + "'");
  }
}

}  // namespace

std::string distribution_csv(const TupleDistribution& d) {
  std::string out = "tuple,count\n";
  for (const auto& [code, n] : d.counts()) {
    out += Tuple{code, d.k()}.to_string();
    out += ',';
    out += std::to_string(n);
    out += '\n';
  }
  return out;
}

std::string distribution_envelope(const TupleDistribution& d, const std::string& name,
                                  const std::string& counts_file) {
  const Provenance& p = d.provenance();
  json source = json::object();
  source["kind"] = p.kind;
  source["label"] = p.label;
  source["params"] = json::object();
  for (const auto& [key, value] : p.params) source["params"][key] = value;

  json env = json::object();
  env["format"] = "algoprob-distribution";
  env["version"] = kDistributionFormatVersion;
  env["name"] = name;
  env["k"] = d.k();
  env["total"] = d.total();
  env["distinct"] = d.counts().size();
  env["counts_file"] = counts_file;
  env["counts_sha256"] = to_hex(sha256(distribution_csv(d)));
  env["source"] = source;
  env["seed"] = p.seed ? json(*p.seed) : json(nullptr);
  return env.dump(2) + "\n";
}

TupleDistribution parse_distribution_csv(const std::string& csv, int k) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "tuple,count") {
    throw DataError("distribution CSV must start with 'tuple,count'");
  }
  TupleDistribution::Counts counts;
  std::uint32_t prev = 0;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw DataError("malformed CSV row '" + line + "'");
    const Tuple t = Tuple::from_string(line.substr(0, comma));
    if (t.k != k) throw DataError("tuple '" + line.substr(0, comma) + "' does not have width " + std::to_string(k));
    const std::uint64_t n = parse_u64(line.substr(comma + 1), "count");
    if (n == 0) throw DataError("zero count in distribution CSV");
    if (!first && t.code <= prev) throw DataError("distribution CSV rows not in strictly increasing order");
    counts.emplace_hint(counts.end(), t.code, n);
    prev = t.code;
    first = false;
  }
  return TupleDistribution(k, std::move(counts));
}

std::filesystem::path write_distribution(const TupleDistribution& d, const std::string& name,
                                         const std::filesystem::path& dir, const std::string& stem) {
  const std::string csv_name = stem + ".csv";
  write_file_atomic(dir / csv_name, distribution_csv(d));
  const auto json_path = dir / (stem + ".json");
  write_file_atomic(json_path, distribution_envelope(d, name, csv_name));
  return json_path;
}

NamedDistribution read_distribution(const std::filesystem::path& json_path) {
  json env;
  try {
    env = json::parse(read_text(json_path));
  } catch (const json::exception& e) {
    throw DataError("cannot parse " + json_path.string() + ": " + e.what());
  }
  try {
    if (env.at("format").get<std::string>() != "algoprob-distribution") {
      throw DataError(json_path.string() + " is not a distribution envelope");
    }
    if (env.at("version").get<int>() != kDistributionFormatVersion) {
      throw DataError(json_path.string() + ": unsupported distribution format version");
    }
    const int k = env.at("k").get<int>();
    const auto csv_path = json_path.parent_path() / env.at("counts_file").get<std::string>();
    const std::string csv = read_text(csv_path);
    if (to_hex(sha256(csv)) != env.at("counts_sha256").get<std::string>()) {
      throw DataError(csv_path.string() + " does not match the digest in " + json_path.string());
    }
    TupleDistribution d = parse_distribution_csv(csv, k);
    if (d.total() != env.at("total").get<std::uint64_t>()) {
      throw DataError(json_path.string() + ": total does not match the counts file");
    }
    Provenance p;
    const json& source = env.at("source");
    p.kind = source.at("kind").get<std::string>();
    p.label = source.at("label").get<std::string>();
    for (const auto& [key, value] : source.at("params").items()) p.params[key] = value.get<std::string>();
    if (!env.at("seed").is_null()) p.seed = env.at("seed").get<std::uint64_t>();
    d.set_provenance(std::move(p));
    return {env.at("name").get<std::string>(), std::move(d)};
  } catch (const json::exception& e) {
    throw DataError(json_path.string() + ": " + e.what());
  }
}

}  // namespace algoprob
