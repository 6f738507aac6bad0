#include "algoprob/cli.hpp"

#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "algoprob/random.hpp"
#include "algoprob/serialization.hpp"
#include "test_util.hpp"

namespace algoprob::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

int run_cli(std::vector<std::string> args, std::string* out = nullptr, std::string* err = nullptr) {
  args.insert(args.begin(), "algoprob");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int rc = run(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return rc;
}

std::string random_bytes(std::uint64_t seed, std::size_t n) {
  SplitMix64 rng(seed);
  std::string s(n, '\0');
  for (auto& c : s) c = static_cast<char>(rng.below(256));
  return s;
}

// Small machine config: quick to run, still exercises every class.
std::string machine_config(const std::string& out) {
  return R"({"k": [4, 5], "out": ")" + out + R"(", "stats": {"permutations": 500, "seed": 7},
    "distributions": [
      {"machine": {"class": "TM", "sample_size": 200, "seed": 1, "steps": 50}},
      {"machine": {"class": "CA", "sample_size": 200, "seed": 2, "steps": 50}},
      {"machine": {"class": "TS", "sample_size": 200, "seed": 3, "steps": 50}}]})";
}

TEST(Config, DefaultsAndLabels) {
  const auto c = parse_config(R"({"distributions": [{"machine": {"class": "CA"}},
                                   {"source": {"kind": "dna", "paths": "x.fa"}}]})",
                              "/base");
  EXPECT_EQ(c.ks, (std::vector<int>{4, 5, 6, 7}));
  EXPECT_EQ(c.stats.permutations, 10000u);
  EXPECT_EQ(c.stats.tie_policy, TiePolicy::kFractional);
  ASSERT_EQ(c.distributions.size(), 2u);
  EXPECT_EQ(c.distributions[0].name, "CA");
  EXPECT_EQ(c.distributions[1].name, "DNA");
  const auto& src = std::get<PhysicalSource>(c.distributions[1].source);
  EXPECT_EQ(src.paths.front(), fs::path("/base/x.fa"));
  EXPECT_EQ(std::get<SampleSpec>(c.distributions[0].source).sample_size, 2000u);
}

TEST(Config, RejectsMalformedDocuments) {
  EXPECT_THROW(parse_config("{", "."), ConfigError);
  EXPECT_THROW(parse_config(R"({"kk": 4})", "."), ConfigError);
  EXPECT_THROW(parse_config(R"({"distributions": [{"machine": {"class": "XX"}}]})", "."), ConfigError);
  EXPECT_THROW(parse_config(R"({"distributions": [{"name": "a"}]})", "."), ConfigError);
  EXPECT_THROW(parse_config(R"({"distributions": [{"machine": {"class": "TM", "seed": -1}}]})", "."),
               ConfigError);
  EXPECT_THROW(parse_config(R"({"stats": {"tie_policy": "kendall"}})", "."), ConfigError);
}

TEST(Config, ValidationCatchesUnusableConfigs) {
  auto dup = parse_config(R"({"distributions": [{"machine": {"class": "TM"}}, {"machine": {"class": "TM"}}]})", ".");
  EXPECT_THROW(validate(dup), ConfigError);
  auto missing = parse_config(R"({"distributions": [{"source": {"kind": "file", "paths": ["/no/such"]}}]})", ".");
  EXPECT_THROW(validate(missing), ConfigError);
  auto bad_k = parse_config(R"({"k": [0]})", ".");
  EXPECT_THROW(validate(bad_k), ConfigError);
  auto oversample = parse_config(R"({"distributions": [{"machine": {"class": "TM", "n_states": 2, "sample_size": 5000}}]})", ".");
  EXPECT_THROW(validate(oversample), ConfigError);
  auto bad_name = parse_config(R"({"distributions": [{"name": "../x", "machine": {"class": "TM"}}]})", ".");
  EXPECT_THROW(validate(bad_name), ConfigError);
}

TEST(Config, FlagsOverrideConfig) {
  auto c = parse_config(machine_config("o"), "/base");
  Overrides o;
  o.ks = std::vector<int>{6};
  o.seed = 99;
  o.sample_size = 10;
  o.steps = 20;
  o.permutations = 3;
  o.tie_policy = TiePolicy::kStrict;
  apply_overrides(c, o);
  EXPECT_EQ(c.ks, std::vector<int>{6});
  EXPECT_EQ(c.stats.seed, 99u);
  EXPECT_EQ(c.stats.permutations, 3u);
  EXPECT_EQ(c.stats.tie_policy, TiePolicy::kStrict);
  EXPECT_EQ(c.out, fs::path("/base/o"));
  for (const auto& d : c.distributions) {
    const auto& s = std::get<SampleSpec>(d.source);
    EXPECT_EQ(s.seed, 99u);
    EXPECT_EQ(s.sample_size, 10u);
    EXPECT_EQ(s.steps, 20);
  }
}

TEST(Generate, ExhaustiveCaGivesSixteenRows) {
  testutil::TempDir dir;
  auto c = parse_config(R"({"k": 4, "distributions": [{"machine": {"class": "CA", "mode": "exhaustive", "steps": 10}}]})",
                        dir.path());
  c.out = dir.path();
  std::ostringstream log;
  const auto files = cmd_generate(c, log);
  ASSERT_EQ(files.size(), 1u);
  EXPECT_EQ(files[0], dir.path() / "CA.k4.json");
  const std::string csv = testutil::slurp(dir.path() / "CA.k4.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 17);
  const auto back = read_distribution(files[0]);
  EXPECT_EQ(back.distribution.provenance().params.at("mode"), "exhaustive");
  EXPECT_NE(log.str().find("CA"), std::string::npos);
}

TEST(Generate, ReplayIsByteIdentical) {
  testutil::TempDir dir;
  testutil::write_file(dir / "cfg.json", machine_config("run"));
  std::map<std::string, std::string> first;
  for (int round = 0; round < 2; ++round) {
    fs::remove_all(dir / "run");
    ASSERT_EQ(run_cli({"generate", "--config", (dir / "cfg.json").string(),
                       "--threads", round == 0 ? "1" : "3"}), kExitOk);
    ASSERT_EQ(run_cli({"compare", "--config", (dir / "cfg.json").string()}), kExitOk);
    for (const auto& e : fs::recursive_directory_iterator(dir / "run")) {
      if (!e.is_regular_file()) continue;
      const auto key = fs::relative(e.path(), dir / "run").string();
      if (round == 0) {
        first[key] = testutil::slurp(e.path());
      } else {
        ASSERT_TRUE(first.count(key)) << key;
        EXPECT_EQ(first[key], testutil::slurp(e.path())) << key;
      }
    }
  }
  EXPECT_GE(first.size(), 6u + 2u * 2u + 2u * 3u * 2u);
}

TEST(Ingest, DirectoryOfThreeFiles) {
  testutil::TempDir dir;
  for (int i = 0; i < 3; ++i) testutil::write_file(dir / ("in/f" + std::to_string(i)), random_bytes(i, 100));
  testutil::write_file(dir / "cfg.json", R"({"k": 4, "out": "o", "distributions": [{"source": {"kind": "file", "paths": "in"}}]})");
  std::string out;
  ASSERT_EQ(run_cli({"ingest", "--config", (dir / "cfg.json").string()}, &out), kExitOk);
  const auto d = read_distribution(dir / "o/HD.k4.json");
  EXPECT_EQ(d.name, "HD");
  EXPECT_EQ(d.distribution.total(), 3u * (800 - 3));
  const std::string manifest = testutil::slurp(dir / "o/HD.manifest.jsonl");
  EXPECT_EQ(std::count(manifest.begin(), manifest.end(), '\n'), 3);
  EXPECT_EQ(manifest.find("skipped"), std::string::npos);
}

TEST(Ingest, OversizeFileIsSkipped) {
  testutil::TempDir dir;
  testutil::write_file(dir / "in/small", random_bytes(1, 10));
  testutil::write_file(dir / "in/big", random_bytes(2, 100));
  testutil::write_file(dir / "cfg.json",
                       R"({"k": 3, "out": "o", "distributions": [{"source": {"kind": "file", "paths": "in", "max_bytes": 50}}]})");
  ASSERT_EQ(run_cli({"ingest", "--config", (dir / "cfg.json").string()}), kExitOk);
  const std::string manifest = testutil::slurp(dir / "o/HD.manifest.jsonl");
  EXPECT_NE(manifest.find("\"skipped:size\""), std::string::npos);
  EXPECT_EQ(read_distribution(dir / "o/HD.k3.json").distribution.total(), 80u - 2);
}

TEST(Ingest, FastaIsComplementSymmetric) {
  testutil::TempDir dir;
  testutil::write_file(dir / "cfg.json", R"({"k": [4, 6], "out": "o", "distributions": [{"source": {"kind": "dna", "paths": ")" +
                                             testutil::fixture("sample.fa").string() + R"("}}]})");
  ASSERT_EQ(run_cli({"ingest", "--config", (dir / "cfg.json").string()}), kExitOk);
  for (int k : {4, 6}) {
    const auto d = read_distribution(distribution_path(dir / "o", "DNA", k)).distribution;
    ASSERT_GT(d.total(), 0u);
    for (const auto& [code, n] : d.counts()) EXPECT_EQ(d.count(Tuple{code, k}.complement()), n);
  }
}

class CompareTest : public ::testing::Test {
 protected:
  fs::path write(const std::string& name, const TupleDistribution& d) {
    return write_distribution(d, name, dir_.path() / "in", name + ".k" + std::to_string(d.k()));
  }
  testutil::TempDir dir_;
};

TEST_F(CompareTest, IdenticalDistributionsCorrelatePerfectly) {
  const TupleDistribution d(4, {{0, 9}, {3, 5}, {7, 2}, {12, 1}, {15, 30}});
  const auto a = write("A", d), b = write("B", d);
  ASSERT_EQ(run_cli({"compare", a.string(), b.string(), "--out", (dir_.path() / "o").string(), "--permutations", "999"}),
            kExitOk);
  const std::string csv = testutil::slurp(dir_.path() / "o/compare/matrix.k4.csv");
  EXPECT_EQ(csv, "k = 4,A,B\nA,1.0000‡,1.0000‡\nB,1.0000‡,1.0000‡\n");
}

TEST_F(CompareTest, TrioMatchesDirectComputation) {
  const TupleDistribution x(3, {{0, 10}, {1, 4}, {2, 4}, {3, 1}, {7, 8}});
  const TupleDistribution y(3, {{0, 7}, {1, 5}, {4, 2}, {6, 1}, {7, 9}});
  const TupleDistribution z(3, {{0, 1}, {2, 6}, {3, 6}, {5, 3}, {6, 2}, {7, 1}});
  const std::vector<fs::path> inputs{write("X", x), write("Y", y), write("Z", z)};
  ExperimentConfig c;
  c.out = dir_.path() / "o";
  c.stats.permutations = 3000;
  c.stats.seed = 5;
  c.stats.tie_policy = TiePolicy::kStrict;
  std::ostringstream log;
  cmd_compare(c, inputs, log);
  const auto j = json::parse(testutil::slurp(c.out / "compare/matrix.k3.json"));
  const std::vector<TupleDistribution> d{x, y, z};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      const auto p = join(d[std::min(i, k)], d[std::max(i, k)]);
      const double rho = spearman(p, TiePolicy::kStrict);
      EXPECT_EQ(j["cells"][i][k]["rho"].get<double>(), rho);
      EXPECT_EQ(j["cells"][i][k]["p_value"].get<double>(),
                permutation_test(p, rho, TiePolicy::kStrict, {3000, 5, 1}));
    }
  }
  // Hand-computed strict-rank value for (X, Y): ranks 1,3,4,5,6,7,8,2 vs 2,3,6,7,4,8,5,1, sum d^2 = 24.
  EXPECT_DOUBLE_EQ(j["cells"][0][1]["rho"].get<double>(), 1.0 - 6.0 * 24 / (8.0 * 63));
}

TEST_F(CompareTest, LexicographicSeriesOrder) {
  const TupleDistribution d(4, {{5, 1}, {10, 3}});
  const auto a = write("A", d), b = write("B", uniform_distribution(4));
  ASSERT_EQ(run_cli({"compare", a.string(), b.string(), "--out", (dir_.path() / "o").string(), "--permutations", "9"}),
            kExitOk);
  const std::string lex = testutil::slurp(dir_.path() / "o/compare/series/A.k4.lexicographic.csv");
  std::istringstream in(lex);
  std::string line;
  std::getline(in, line);
  for (int i = 0; i < 16; ++i) {
    std::getline(in, line);
    EXPECT_EQ(line.substr(0, line.rfind(',')), (std::to_string(i) + "," + Tuple{static_cast<std::uint32_t>(i), 4}.to_string()));
  }
  EXPECT_EQ(testutil::slurp(dir_.path() / "o/compare/series/A.k4.ranked.csv"),
            "rank,tuple,probability\n1,1010,0.75\n2,0101,0.25\n");
}

TEST_F(CompareTest, MismatchedKSetsAreRejected) {
  const auto a4 = write("A", uniform_distribution(4));
  const auto a5 = write("A", uniform_distribution(5));
  const auto b4 = write("B", uniform_distribution(4));
  std::string err;
  EXPECT_EQ(run_cli({"compare", a4.string(), a5.string(), b4.string(), "--out", (dir_.path() / "o").string()}, nullptr,
                    &err),
            kExitData);
  EXPECT_NE(err.find("mismatched k"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_.path() / "o"));
  EXPECT_EQ(run_cli({"compare", a4.string()}), kExitConfig);
}

TEST(Score, ReferenceAgainstItself) {
  testutil::TempDir dir;
  const TupleDistribution ref(4, {{0, 50}, {15, 40}, {5, 6}, {10, 5}, {1, 2}, {3, 1}}, {"machine", "CA", {}, 42});
  const auto path = write_distribution(ref, "CA", dir.path(), "CA.k4");
  ExperimentConfig c;
  c.out = dir.path();
  c.stats.permutations = 999;
  c.stats.seed = 8;
  std::ostringstream log;
  const auto report = cmd_score(c, {path, SourceKind::kFile, path, 3, std::nullopt}, log);
  const auto j = json::parse(testutil::slurp(report));
  EXPECT_EQ(j["tv_reference"], 0.0);
  EXPECT_EQ(j["correlation"]["rho"], 1.0);
  EXPECT_EQ(j["reference"]["source"]["seed"], 42);
  EXPECT_EQ(j["stats"]["seed"], 8);
  EXPECT_EQ(j["reference"]["counts_sha256"], json::parse(testutil::slurp(path))["counts_sha256"]);
  ASSERT_EQ(j["complexity"].size(), 3u);
  EXPECT_EQ(j["complexity"][0]["tuple"], "0000");
}

TEST(Score, RandomDataIsCloserToUniform) {
  testutil::TempDir dir;
  testutil::write_file(dir / "noise.bin", random_bytes(4, 20000));
  SampleSpec spec;
  spec.machine_class = MachineClass::kCellular;
  spec.sample_size = 500;
  spec.seed = 1;
  const auto ref = write_distribution(machine_experiment(spec, 4), "CA", dir.path(), "CA.k4");
  std::string out;
  ASSERT_EQ(run_cli({"score", "--data", (dir / "noise.bin").string(), "--reference", ref.string(), "--out",
                     dir.path().string(), "--permutations", "200"},
                    &out),
            kExitOk);
  const auto j = json::parse(testutil::slurp(dir / "score.CA.k4.json"));
  EXPECT_LT(j["tv_uniform"].get<double>(), j["tv_reference"].get<double>());
  EXPECT_FALSE(j["closer_to_reference"].get<bool>());
}

TEST(Score, MismatchedK) {
  testutil::TempDir dir;
  const auto a = write_distribution(uniform_distribution(4), "U", dir.path(), "U4");
  const auto b = write_distribution(uniform_distribution(5), "U", dir.path(), "U5");
  EXPECT_EQ(run_cli({"score", "--data", a.string(), "--reference", b.string(), "--out", dir.path().string()}), kExitData);
}

TEST(Compress, RoundTripAndReport) {
  testutil::TempDir dir;
  testutil::write_file(dir / "in.bin", random_bytes(5, 4096));
  const TupleDistribution ref(4, {{0, 50}, {15, 40}, {5, 6}});
  const auto refp = write_distribution(ref, "R", dir.path(), "R.k4");
  std::string out;
  ASSERT_EQ(run_cli({"compress", (dir / "in.bin").string(), "--reference", refp.string(), "-o",
                     (dir / "in.aprc").string(), "--codebook-out", (dir / "cb.csv").string()},
                    &out),
            kExitOk);
  const auto j = json::parse(out);
  EXPECT_EQ(j["input_bits"], 4096 * 8);
  EXPECT_TRUE(j.contains("bits_per_block"));
  EXPECT_TRUE(j.contains("block_entropy"));
  ASSERT_EQ(run_cli({"decompress", (dir / "in.aprc").string(), "--codebook", (dir / "cb.csv").string(), "-o",
                     (dir / "out.bin").string()}),
            kExitOk);
  EXPECT_EQ(testutil::slurp(dir / "out.bin"), testutil::slurp(dir / "in.bin"));
}

TEST(Compress, ForeignCodebookIsAHardError) {
  testutil::TempDir dir;
  testutil::write_file(dir / "in.bin", random_bytes(6, 100));
  const auto a = write_distribution(TupleDistribution(4, {{0, 9}}), "A", dir.path(), "A");
  const auto b = write_distribution(TupleDistribution(4, {{15, 9}}), "B", dir.path(), "B");
  ASSERT_EQ(run_cli({"compress", (dir / "in.bin").string(), "--reference", a.string(), "-o", (dir / "p").string()}),
            kExitOk);
  std::string err;
  EXPECT_EQ(run_cli({"decompress", (dir / "p").string(), "--reference", b.string(), "-o", (dir / "out").string()},
                    nullptr, &err),
            kExitData);
  EXPECT_NE(err.find("digest"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "out"));
  EXPECT_EQ(run_cli({"compress", (dir / "in.bin").string(), "-o", (dir / "q").string()}), kExitConfig);
}

TEST(Report, RankedTable) {
  testutil::TempDir dir;
  const auto p = write_distribution(TupleDistribution(2, {{3, 6}, {0, 2}}), "T", dir.path(), "T.k2");
  std::string out;
  ASSERT_EQ(run_cli({"report", p.string(), "--top", "1"}, &out), kExitOk);
  EXPECT_EQ(out, "# T  k=2  total=8  observed=2/4\nrank\ttuple\tcount\tm\tK\n1\t11\t6\t0.750000\t0.4150\n\n");
}

TEST(ExitCodes, DistinguishConfigDataAndUsage) {
  testutil::TempDir dir;
  EXPECT_EQ(run_cli({}), kExitConfig);
  EXPECT_EQ(run_cli({"generate", "--bogus"}), kExitConfig);
  EXPECT_EQ(run_cli({"generate", "--config", (dir / "none.json").string()}), kExitConfig);
  EXPECT_EQ(run_cli({"generate", "--tie-policy", "x"}), kExitConfig);
  testutil::write_file(dir / "bad.json", "{\"format\": 1}");
  EXPECT_EQ(run_cli({"report", (dir / "bad.json").string()}), kExitData);
  std::string out;
  EXPECT_EQ(run_cli({"--help"}, &out), kExitOk);
  EXPECT_NE(out.find("generate"), std::string::npos);
}

}  // namespace
}  // namespace algoprob::cli
