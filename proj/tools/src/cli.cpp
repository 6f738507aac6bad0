#include "algoprob/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <json.hpp>
#include <ostream>
#include <set>
#include <sstream>

#include "algoprob/digest.hpp"
#include "algoprob/io.hpp"
#include "algoprob/priorcoder.hpp"
#include "algoprob/serialization.hpp"

namespace algoprob::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Series longer than this are not written in lexicographic form.
constexpr int kMaxLexicographicSeriesWidth = 16;

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
  }
}

std::uint64_t get_uint(const json& obj, const char* key, std::uint64_t fallback, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_unsigned()) throw ConfigError(where + "." + key + " must be a non-negative integer");
  return it->get<std::uint64_t>();
}

int get_int(const json& obj, const char* key, int fallback, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
  return it->get<int>();
}

std::string get_string(const json& obj, const char* key, const std::string& fallback, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_string()) throw ConfigError(where + "." + key + " must be a string");
  return it->get<std::string>();
}

fs::path resolve(const fs::path& p, const fs::path& base) {
  return (p.is_relative() ? base / p : p).lexically_normal();
}

WindowMode parse_window_mode(const std::string& name) {
  if (name == "sliding") return WindowMode::kSliding;
  if (name == "blocks") return WindowMode::kBlocks;
  throw ConfigError("windows must be 'sliding' or 'blocks', got '" + name + "'");
}

SampleSpec parse_machine(const json& m, const std::string& where) {
  check_keys(m, {"class", "n_states", "mode", "sample_size", "seed", "steps"}, where);
  SampleSpec spec;
  const auto cls = m.find("class");
  if (cls == m.end() || !cls->is_string()) throw ConfigError(where + ".class is required (TM, CA or TS)");
  try {
    spec.machine_class = parse_machine_class(cls->get<std::string>());
  } catch (const RangeError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  spec.n_states = get_int(m, "n_states", spec.n_states, where);
  const std::string mode = get_string(m, "mode", "sample", where);
  if (mode == "sample") {
    spec.mode = SampleMode::kSample;
  } else if (mode == "exhaustive") {
    spec.mode = SampleMode::kExhaustive;
  } else {
    throw ConfigError(where + ".mode must be 'sample' or 'exhaustive'");
  }
  spec.sample_size = get_uint(m, "sample_size", spec.sample_size, where);
  spec.seed = get_uint(m, "seed", spec.seed, where);
  spec.steps = get_int(m, "steps", spec.steps, where);
  return spec;
}

PhysicalSource parse_source(const json& s, const std::string& where, const fs::path& base) {
  check_keys(s, {"kind", "paths", "max_bytes", "max_linear_pixels", "sample", "seed", "windows"}, where);
  PhysicalSource src;
  const auto kind = s.find("kind");
  if (kind == s.end() || !kind->is_string()) throw ConfigError(where + ".kind is required (file, dna or image)");
  try {
    src.kind = parse_source_kind(kind->get<std::string>());
  } catch (const RangeError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  const auto paths = s.find("paths");
  if (paths == s.end()) throw ConfigError(where + ".paths is required");
  if (paths->is_string()) {
    src.paths.push_back(resolve(paths->get<std::string>(), base));
  } else if (paths->is_array()) {
    for (const auto& p : *paths) {
      if (!p.is_string()) throw ConfigError(where + ".paths must hold strings");
      src.paths.push_back(resolve(p.get<std::string>(), base));
    }
  } else {
    throw ConfigError(where + ".paths must be a string or a list of strings");
  }
  src.options.max_file_bytes = get_uint(s, "max_bytes", src.options.max_file_bytes, where);
  src.options.max_linear_pixels = get_int(s, "max_linear_pixels", src.options.max_linear_pixels, where);
  if (s.contains("sample")) src.options.sample = get_uint(s, "sample", 0, where);
  src.options.seed = get_uint(s, "seed", src.options.seed, where);
  src.options.mode = parse_window_mode(get_string(s, "windows", "sliding", where));
  return src;
}

std::vector<int> parse_ks(const json& k) {
  std::vector<int> ks;
  if (k.is_number_integer()) {
    ks.push_back(k.get<int>());
  } else if (k.is_array()) {
    for (const auto& v : k) {
      if (!v.is_number_integer()) throw ConfigError("k must hold integers");
      ks.push_back(v.get<int>());
    }
  } else {
    throw ConfigError("k must be an integer or a list of integers");
  }
  return ks;
}

std::string k_stem(const std::string& name, int k) { return name + ".k" + std::to_string(k); }

json provenance_json(const Provenance& p) {
  json j = {{"kind", p.kind}, {"label", p.label}, {"params", p.params}};
  j["seed"] = p.seed ? json(*p.seed) : json(nullptr);
  return j;
}

json distribution_summary(const std::string& name, const fs::path& file, const TupleDistribution& d) {
  json j = {{"name", name},
            {"file", file.string()},
            {"k", d.k()},
            {"total", d.total()},
            {"counts_sha256", to_hex(sha256(distribution_csv(d)))},
            {"source", provenance_json(d.provenance())}};
  return j;
}

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string stats_description(const StatsOptions& s) {
  return "tie policy " + tie_policy_name(s.tie_policy) + ", " + std::to_string(s.permutations) +
         " permutations, seed " + std::to_string(s.seed);
}

StatsOptions effective_stats(const ExperimentConfig& config) {
  StatsOptions s = config.stats;
  s.threads = config.threads;
  return s;
}

CodeBook load_codebook(const CodebookSource& src) {
  if (src.reference.has_value() == src.codebook.has_value()) {
    throw ConfigError("give exactly one of --reference or --codebook");
  }
  if (src.codebook) return parse_codebook_csv(read_text(*src.codebook));
  return build_codebook(read_distribution(*src.reference).distribution);
}

void require_distributions(const ExperimentConfig& config, bool machine) {
  const bool any = std::any_of(config.distributions.begin(), config.distributions.end(),
                               [&](const DistributionSpec& d) { return d.is_machine() == machine; });
  if (!any) {
    throw ConfigError(std::string("the config lists no ") + (machine ? "machine" : "source") + " distributions");
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const fs::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(root, {"k", "out", "threads", "stats", "distributions"}, "config");
  ExperimentConfig config;
  if (root.contains("k")) config.ks = parse_ks(root["k"]);
  if (root.contains("out")) config.out = resolve(get_string(root, "out", "", "config"), base_dir);
  config.threads = static_cast<unsigned>(get_uint(root, "threads", 0, "config"));
  if (root.contains("stats")) {
    const json& s = root["stats"];
    check_keys(s, {"tie_policy", "permutations", "seed"}, "stats");
    try {
      config.stats.tie_policy = parse_tie_policy(get_string(s, "tie_policy", "fractional", "stats"));
    } catch (const RangeError& e) {
      throw ConfigError(std::string("stats: ") + e.what());
    }
    config.stats.permutations = get_uint(s, "permutations", config.stats.permutations, "stats");
    config.stats.seed = get_uint(s, "seed", config.stats.seed, "stats");
  }
  if (root.contains("distributions")) {
    const json& list = root["distributions"];
    if (!list.is_array()) throw ConfigError("distributions must be a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "distributions[" + std::to_string(i) + "]";
      const json& entry = list[i];
      check_keys(entry, {"name", "machine", "source"}, where);
      if (entry.contains("machine") == entry.contains("source")) {
        throw ConfigError(where + " needs exactly one of 'machine' or 'source'");
      }
      DistributionSpec spec;
      std::string label;
      if (entry.contains("machine")) {
        const SampleSpec m = parse_machine(entry["machine"], where + ".machine");
        label = machine_class_label(m.machine_class);
        spec.source = m;
      } else {
        PhysicalSource s = parse_source(entry["source"], where + ".source", base_dir);
        label = source_kind_label(s.kind);
        spec.source = std::move(s);
      }
      spec.name = get_string(entry, "name", label, where);
      config.distributions.push_back(std::move(spec));
    }
  }
  return config;
}

ExperimentConfig load_config(const fs::path& file) {
  std::string text;
  try {
    text = read_text(file);
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text, fs::absolute(file).parent_path());
}

void apply_overrides(ExperimentConfig& config, const Overrides& o) {
  if (o.ks) config.ks = *o.ks;
  if (o.tie_policy) config.stats.tie_policy = *o.tie_policy;
  if (o.permutations) config.stats.permutations = *o.permutations;
  if (o.threads) config.threads = *o.threads;
  if (o.out) config.out = *o.out;
  if (o.seed) config.stats.seed = *o.seed;
  for (auto& d : config.distributions) {
    if (auto* m = std::get_if<SampleSpec>(&d.source)) {
      if (o.seed) m->seed = *o.seed;
      if (o.sample_size) m->sample_size = *o.sample_size;
      if (o.steps) m->steps = *o.steps;
    } else if (o.seed) {
      std::get<PhysicalSource>(d.source).options.seed = *o.seed;
    }
  }
}

void validate(const ExperimentConfig& config) {
  if (config.ks.empty()) throw ConfigError("k list is empty");
  std::set<int> seen_k;
  for (int k : config.ks) {
    if (k < 1 || k > kMaxTupleWidth) {
      throw ConfigError("k = " + std::to_string(k) + " is outside 1.." + std::to_string(kMaxTupleWidth));
    }
    if (!seen_k.insert(k).second) throw ConfigError("k = " + std::to_string(k) + " is listed twice");
  }
  if (config.stats.permutations == 0) throw ConfigError("permutations must be positive");
  std::set<std::string> names;
  for (const auto& d : config.distributions) {
    if (d.name.empty() || d.name.front() == '.' ||
        !std::all_of(d.name.begin(), d.name.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'; })) {
      throw ConfigError("distribution name '" + d.name + "' must use letters, digits, '_', '-' or '.'");
    }
    if (!names.insert(d.name).second) throw ConfigError("distribution name '" + d.name + "' is used twice");
    if (const auto* m = std::get_if<SampleSpec>(&d.source)) {
      try {
        validate(*m);
      } catch (const RangeError& e) {
        throw ConfigError(d.name + ": " + e.what());
      }
    } else {
      const auto& s = std::get<PhysicalSource>(d.source);
      if (s.paths.empty()) throw ConfigError(d.name + ": no input paths");
      for (const auto& p : s.paths) {
        if (!fs::exists(p)) throw ConfigError(d.name + ": input path " + p.string() + " does not exist");
      }
    }
  }
}

fs::path distribution_path(const fs::path& out, const std::string& name, int k) {
  return out / (k_stem(name, k) + ".json");
}

std::vector<fs::path> cmd_generate(const ExperimentConfig& config, std::ostream& log) {
  validate(config);
  require_distributions(config, true);
  std::vector<fs::path> written;
  for (const auto& d : config.distributions) {
    const auto* spec = std::get_if<SampleSpec>(&d.source);
    if (!spec) continue;
    log << "generate " << d.name << ": " << machine_class_label(spec->machine_class) << ", "
        << (spec->mode == SampleMode::kExhaustive ? "all" : std::to_string(spec->sample_size)) << " of "
        << class_size(*spec) << " machines, " << spec->steps << " steps, seed " << spec->seed << "\n";
    const auto dists = machine_experiment(*spec, config.ks, {config.threads});
    for (std::size_t i = 0; i < dists.size(); ++i) {
      written.push_back(write_distribution(dists[i], d.name, config.out, k_stem(d.name, config.ks[i])));
    }
  }
  return written;
}

std::vector<fs::path> cmd_ingest(const ExperimentConfig& config, std::ostream& log) {
  validate(config);
  require_distributions(config, false);
  std::vector<fs::path> written;
  for (const auto& d : config.distributions) {
    const auto* src = std::get_if<PhysicalSource>(&d.source);
    if (!src) continue;
    const auto result = ingest_corpus(src->kind, src->paths, config.ks, src->options);
    const auto ok = std::count_if(result.manifest.begin(), result.manifest.end(),
                                  [](const SourceDescriptor& s) { return s.status == "ok"; });
    log << "ingest " << d.name << ": " << source_kind_name(src->kind) << ", " << ok << " of "
        << result.manifest.size() << " files used";
    if (src->options.sample) log << ", sample " << *src->options.sample << " seed " << src->options.seed;
    log << "\n";
    for (std::size_t i = 0; i < result.distributions.size(); ++i) {
      written.push_back(
          write_distribution(result.distributions[i], d.name, config.out, k_stem(d.name, config.ks[i])));
    }
    const fs::path manifest = config.out / (d.name + ".manifest.jsonl");
    write_file_atomic(manifest, manifest_jsonl(result.manifest));
    written.push_back(manifest);
  }
  return written;
}

std::vector<fs::path> cmd_compare(const ExperimentConfig& config, const std::vector<fs::path>& inputs,
                                  std::ostream& log) {
  // names in first-seen order; per k, one distribution per name
  std::vector<std::string> names;
  std::map<int, std::map<std::string, TupleDistribution>> by_k;
  if (inputs.empty()) {
    validate(config);
    for (const auto& d : config.distributions) names.push_back(d.name);
    for (int k : config.ks) {
      for (const auto& name : names) {
        const fs::path p = distribution_path(config.out, name, k);
        if (!fs::exists(p)) throw DataError("missing " + p.string() + "; run generate or ingest first");
        by_k[k].emplace(name, read_distribution(p).distribution);
      }
    }
  } else {
    for (const auto& p : inputs) {
      auto nd = read_distribution(p);
      if (std::find(names.begin(), names.end(), nd.name) == names.end()) names.push_back(nd.name);
      const int k = nd.distribution.k();
      if (!by_k[k].emplace(nd.name, std::move(nd.distribution)).second) {
        throw ConfigError("two inputs are named '" + nd.name + "' at k = " + std::to_string(k));
      }
    }
    for (const auto& [k, group] : by_k) {
      for (const auto& name : names) {
        if (!group.count(name)) {
          throw MismatchError("mismatched k sets: " + name + " has no distribution at k = " + std::to_string(k));
        }
      }
    }
  }
  if (names.size() < 2) throw ConfigError("compare needs at least two distributions");

  const StatsOptions stats = effective_stats(config);
  const fs::path dir = config.out / "compare";
  std::vector<fs::path> written;
  for (const auto& [k, group] : by_k) {
    log << "compare k=" << k << ": " << names.size() << " distributions, " << stats_description(stats) << "\n";
    std::vector<TupleDistribution> dists;
    for (const auto& name : names) dists.push_back(group.at(name));
    const auto m = correlation_matrix(names, dists, stats);
    const std::string stem = "matrix.k" + std::to_string(k);
    write_file_atomic(dir / (stem + ".csv"), matrix_csv(m));
    write_file_atomic(dir / (stem + ".json"), matrix_json(m));
    written.push_back(dir / (stem + ".csv"));
    written.push_back(dir / (stem + ".json"));
    for (std::size_t i = 0; i < names.size(); ++i) {
      const fs::path ranked = dir / "series" / (k_stem(names[i], k) + ".ranked.csv");
      write_file_atomic(ranked, ranked_series_csv(dists[i]));
      written.push_back(ranked);
      if (k <= kMaxLexicographicSeriesWidth) {
        const fs::path lex = dir / "series" / (k_stem(names[i], k) + ".lexicographic.csv");
        write_file_atomic(lex, lexicographic_series_csv(dists[i]));
        written.push_back(lex);
      }
    }
  }
  return written;
}

fs::path cmd_score(const ExperimentConfig& config, const ScoreRequest& request, std::ostream& log) {
  const auto ref = read_distribution(request.reference);
  const int k = ref.distribution.k();
  NamedDistribution data{"", TupleDistribution(k)};
  if (request.data.extension() == ".json") {
    data = read_distribution(request.data);
  } else {
    const std::vector<fs::path> paths{request.data};
    const std::vector<int> ks{k};
    auto result = ingest_corpus(request.data_kind, paths, ks);
    for (const auto& s : result.manifest) {
      if (s.status != "ok") throw DataError(s.path.string() + ": " + s.status);
    }
    data = {request.data.filename().string(), std::move(result.distributions.front())};
  }
  if (data.distribution.k() != k) {
    throw MismatchError("data has k = " + std::to_string(data.distribution.k()) + " but the reference has k = " +
                        std::to_string(k));
  }
  const StatsOptions stats = effective_stats(config);
  log << "score " << data.name << " against " << ref.name << " at k=" << k << ", " << stats_description(stats)
      << "\n";
  const auto report = algorithmicity_score(data.distribution, ref.distribution, stats);

  json j;
  j["k"] = k;
  j["data"] = distribution_summary(data.name, request.data, data.distribution);
  j["reference"] = distribution_summary(ref.name, request.reference, ref.distribution);
  j["stats"] = {{"tie_policy", tie_policy_name(stats.tie_policy)},
                {"permutations", stats.permutations},
                {"seed", stats.seed}};
  if (report.correlation) {
    const auto& c = *report.correlation;
    j["correlation"] = {{"rho", c.rho}, {"p_value", c.p_value}, {"marker", marker(significance(c.p_value))},
                        {"n", c.n}};
  } else {
    j["correlation"] = nullptr;
    j["correlation_note"] = report.correlation_note;
  }
  j["tv_reference"] = report.tv_reference;
  j["tv_uniform"] = report.tv_uniform;
  j["closer_to_reference"] = report.closer_to_reference;
  json table = json::array();
  const auto ranked = rank(data.distribution);
  for (std::size_t i = 0; i < ranked.entries.size() && i < request.top; ++i) {
    const auto& e = ranked.entries[i];
    const auto m_ref = estimate_m(ref.distribution, e.tuple);
    const auto k_ref = estimate_K(ref.distribution, e.tuple);
    table.push_back({{"rank", i + 1},
                     {"tuple", e.tuple.to_string()},
                     {"count", e.count},
                     {"probability", e.probability},
                     {"K_data", *estimate_K(data.distribution, e.tuple)},
                     {"m_reference", m_ref ? json(*m_ref) : json(nullptr)},
                     {"K_reference", k_ref ? json(*k_ref) : json(nullptr)}});
  }
  j["complexity"] = std::move(table);

  const fs::path out = request.report.value_or(config.out / ("score." + ref.name + ".k" + std::to_string(k) + ".json"));
  write_file_atomic(out, j.dump(2) + "\n");
  return out;
}

std::string cmd_compress(const CompressRequest& request, std::ostream& log) {
  const CodeBook book = load_codebook(request.codebook);
  const BitString bits = BitString::from_bytes(read_bytes(request.input));
  const auto payload = encode(bits, book);
  const auto r = compression_report(bits, book);
  log << "compress " << request.input.string() << ": k=" << book.k() << ", " << r.input_bits << " bits -> "
      << r.payload_bits << " bits\n";
  write_file_atomic(request.output, std::string_view(reinterpret_cast<const char*>(payload.data()), payload.size()));
  if (request.codebook_out) write_file_atomic(*request.codebook_out, codebook_csv(book));
  json j = {{"input", request.input.string()},
            {"output", request.output.string()},
            {"k", book.k()},
            {"codebook_sha256", to_hex(book.digest())},
            {"input_bits", r.input_bits},
            {"blocks", r.blocks},
            {"code_bits", r.code_bits},
            {"payload_bits", r.payload_bits},
            {"bits_per_block", r.bits_per_block},
            {"block_entropy", r.block_entropy}};
  j["ratio"] = r.input_bits ? json(static_cast<double>(r.payload_bits) / static_cast<double>(r.input_bits))
                            : json(nullptr);
  return j.dump(2) + "\n";
}

void cmd_decompress(const DecompressRequest& request, std::ostream& log) {
  const CodeBook book = load_codebook(request.codebook);
  const BitString bits = decode(read_bytes(request.input), book);
  if (bits.size() % 8 != 0) throw DataError("decoded stream is not a whole number of bytes");
  const auto bytes = bits.to_bytes();
  log << "decompress " << request.input.string() << ": " << bytes.size() << " bytes\n";
  write_file_atomic(request.output, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::string cmd_report(const ExperimentConfig& config, const std::vector<fs::path>& inputs, std::size_t top) {
  std::vector<fs::path> files = inputs;
  if (files.empty()) {
    validate(config);
    for (const auto& d : config.distributions) {
      for (int k : config.ks) files.push_back(distribution_path(config.out, d.name, k));
    }
  }
  std::string out;
  for (const auto& f : files) {
    const auto nd = read_distribution(f);
    const auto& d = nd.distribution;
    const auto ranked = rank(d);
    char line[160];
    std::snprintf(line, sizeof line, "# %s  k=%d  total=%llu  observed=%zu/%llu\n", nd.name.c_str(), d.k(),
                  static_cast<unsigned long long>(d.total()), d.counts().size(),
                  static_cast<unsigned long long>(tuple_universe_size(d.k())));
    out += line;
    out += "rank\ttuple\tcount\tm\tK\n";
    for (std::size_t i = 0; i < ranked.entries.size() && i < top; ++i) {
      const auto& e = ranked.entries[i];
      out += std::to_string(i + 1) + "\t" + e.tuple.to_string() + "\t" + std::to_string(e.count) + "\t" +
             format("%.6f", e.probability) + "\t" + format("%.4f", *estimate_K(d, e.tuple)) + "\n";
    }
    out += "\n";
  }
  return out;
}

namespace {

void add_config_flags(CLI::App* sub, std::string& config_path, Overrides& o, std::string& tie_policy) {
  sub->add_option("--config", config_path, "JSON experiment config");
  sub->add_option("--out", o.out, "Output directory");
  sub->add_option("--tie-policy", tie_policy, "Rank ties: fractional or strict");
  sub->add_option("--permutations", o.permutations, "Permutation-test trials");
  sub->add_option("--seed", o.seed, "Replace every seed in the config");
  sub->add_option("--threads", o.threads, "Worker threads (0: all cores)");
}

void add_experiment_flags(CLI::App* sub, Overrides& o) {
  sub->add_option("--k", o.ks, "Tuple widths, comma separated")->delimiter(',');
  sub->add_option("--sample-size", o.sample_size, "Machines per sampled class");
  sub->add_option("--steps", o.steps, "Steps per machine run");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Output-frequency distributions of small machines and physical data"};
  app.name("algoprob");
  app.require_subcommand(1);

  std::string config_path;
  std::string tie_policy;
  Overrides o;
  std::vector<std::string> inputs;
  ScoreRequest score;
  std::string score_kind = "file";
  CompressRequest compress;
  DecompressRequest decompress;
  std::size_t top = 10;

  auto* gen = app.add_subcommand("generate", "Run machine samples into distributions");
  auto* ing = app.add_subcommand("ingest", "Turn files, FASTA or images into distributions");
  auto* cmp = app.add_subcommand("compare", "Correlation matrices and plot series");
  auto* sco = app.add_subcommand("score", "Score data against a reference distribution");
  auto* com = app.add_subcommand("compress", "Encode a file with a prior codebook");
  auto* dec = app.add_subcommand("decompress", "Decode a payload with its codebook");
  auto* rep = app.add_subcommand("report", "Ranked tuples with m and K estimates");
  for (auto* sub : {gen, ing, cmp, sco, com, dec, rep}) add_config_flags(sub, config_path, o, tie_policy);
  for (auto* sub : {gen, ing, cmp, rep}) add_experiment_flags(sub, o);

  cmp->add_option("inputs", inputs, "Distribution JSON files (default: all configured)");
  rep->add_option("inputs", inputs, "Distribution JSON files (default: all configured)");
  rep->add_option("--top", top, "Rows per distribution");

  sco->add_option("--data", score.data, "Distribution JSON or raw input")->required();
  sco->add_option("--kind", score_kind, "Raw input kind: file, dna or image");
  sco->add_option("--reference", score.reference, "Reference distribution JSON")->required();
  sco->add_option("--top", score.top, "Rows in the complexity table");
  sco->add_option("--report", score.report, "Report path");

  com->add_option("input", compress.input, "File to compress")->required();
  com->add_option("-o,--output", compress.output, "Payload path")->required();
  com->add_option("--reference", compress.codebook.reference, "Build the codebook from this distribution");
  com->add_option("--codebook", compress.codebook.codebook, "Codebook CSV");
  com->add_option("--codebook-out", compress.codebook_out, "Also write the codebook CSV here");

  dec->add_option("input", decompress.input, "Payload to decode")->required();
  dec->add_option("-o,--output", decompress.output, "Output path")->required();
  dec->add_option("--reference", decompress.codebook.reference, "Build the codebook from this distribution");
  dec->add_option("--codebook", decompress.codebook.codebook, "Codebook CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (!tie_policy.empty()) {
      try {
        o.tie_policy = parse_tie_policy(tie_policy);
      } catch (const RangeError& e) {
        throw ConfigError(e.what());
      }
    }
    ExperimentConfig config;
    if (!config_path.empty()) config = load_config(config_path);
    apply_overrides(config, o);
    const std::vector<fs::path> input_paths(inputs.begin(), inputs.end());

    auto print_paths = [&](const std::vector<fs::path>& paths) {
      for (const auto& p : paths) out << p.string() << "\n";
    };
    if (*gen) {
      print_paths(cmd_generate(config, err));
    } else if (*ing) {
      print_paths(cmd_ingest(config, err));
    } else if (*cmp) {
      print_paths(cmd_compare(config, input_paths, err));
    } else if (*sco) {
      try {
        score.data_kind = parse_source_kind(score_kind);
      } catch (const RangeError& e) {
        throw ConfigError(e.what());
      }
      out << cmd_score(config, score, err).string() << "\n";
    } else if (*com) {
      out << cmd_compress(compress, err);
    } else if (*dec) {
      cmd_decompress(decompress, err);
      out << decompress.output.string() << "\n";
    } else if (*rep) {
      out << cmd_report(config, input_paths, top);
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "algoprob: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const RangeError& e) {
    err << "algoprob: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "algoprob: data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "algoprob: error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace algoprob::cli
