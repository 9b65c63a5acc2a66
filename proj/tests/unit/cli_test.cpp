// Copyright 2026 The superdiv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "superdiv/cli/app.hpp"
#include "superdiv/cli/config.hpp"
#include "superdiv/error.hpp"
#include "superdiv/text.hpp"
#include "support/support.hpp"

namespace superdiv::cli {
namespace {

using superdiv::testing::read_file;
using superdiv::testing::TempDir;
using superdiv::testing::write_file;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

// A small synthetic workspace: corpus.jsonl, lexicon.csv, diversity.csv.
class CliWorkspace : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new TempDir();
    const auto r = invoke({"synth-gen", "--synth_regions", "R0:600:0.0,R1:600:0.4,R2:600:0.8",
                           "--synth_languages", "en:4,it:1", "--synth_vocabulary_size", "300",
                           "--synth_seed", "3", "--output_dir", (*dir_ / "syn").string()});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }

  static std::string file(const std::string& name) { return (*dir_ / "syn" / name).string(); }
  static std::string out(const std::string& name) { return (*dir_ / name).string(); }

  static std::vector<std::string> base(std::string command, const std::string& outdir) {
    return {std::move(command), "--corpus", file("corpus.jsonl"), "--standard_lexicon",
            file("lexicon.csv"), "--region_source", "records", "--level", "nuts1",
            "--output_dir", out(outdir)};
  }

  static TempDir* dir_;
};

TempDir* CliWorkspace::dir_ = nullptr;

TEST(CliConfig, IniSectionsFlattenAndOverride) {
  TempDir dir;
  const auto ini = write_file(dir / "run.ini",
                              "[spreading]\nrange_threshold = 2.5\n\n[si]\niterations = 4\n");
  Settings overrides = {{"iterations", "7"}};
  const auto s = resolve_settings(ini, overrides);
  EXPECT_EQ(s.at("range_threshold"), "2.5");
  EXPECT_EQ(s.at("iterations"), "7");
  EXPECT_EQ(s.at("entropy_threshold"), "1.09");
  const auto c = parse_run_config(s);
  EXPECT_EQ(c.spreading.range_threshold, 2.5);
  EXPECT_EQ(c.iterations, 7u);
}

TEST(CliConfig, RejectsUnknownAndMisplacedKeys) {
  TempDir dir;
  EXPECT_THROW(resolve_settings(write_file(dir / "a.ini", "[si]\nbogus = 1\n"), {}), ConfigError);
  EXPECT_THROW(resolve_settings(write_file(dir / "b.ini", "[si]\nrange_threshold = 1\n"), {}),
               ConfigError);
  EXPECT_THROW(resolve_settings(std::nullopt, {{"bogus", "1"}}), ConfigError);
  EXPECT_THROW(resolve_settings(dir / "missing.ini", {}), ConfigError);
}

TEST(CliConfig, TypedValidation) {
  auto s = resolve_settings(std::nullopt, {});
  EXPECT_NO_THROW(parse_run_config(s));
  for (const auto& [k, v] : std::vector<std::pair<std::string, std::string>>{
           {"iterations", "0"}, {"range_threshold", "-1"}, {"level", "nuts4"},
           {"jobs", "0"}, {"split_fraction", "1"}, {"region_source", "api"},
           {"synth_regions", "A:0:0.1"}, {"classifier", "forest"}, {"base_seed", "x"}}) {
    auto bad = s;
    bad[k] = v;
    EXPECT_THROW(parse_run_config(bad), ConfigError) << k << "=" << v;
  }
}

TEST(CliConfig, GridParsing) {
  EXPECT_EQ(parse_grid("g", "1:5:1"), (std::vector<double>{1, 2, 3, 4, 5}));
  const auto s = parse_grid("g", "0.5:2.3:0.2");
  ASSERT_EQ(s.size(), 10u);
  EXPECT_EQ(s[3], 1.1);
  EXPECT_EQ(s.back(), 2.3);
  EXPECT_EQ(parse_grid("g", "3, 1.09"), (std::vector<double>{3, 1.09}));
  EXPECT_THROW(parse_grid("g", "1:0:1"), ConfigError);
  EXPECT_THROW(parse_grid("g", ""), ConfigError);
}

TEST(CliRun, HelpVersionAndUsageErrors) {
  EXPECT_EQ(invoke({"--help"}).code, 0);
  EXPECT_NE(invoke({"--version"}).out.find("superdiv "), std::string::npos);
  EXPECT_EQ(invoke({}).code, kExitConfig);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitConfig);
  EXPECT_EQ(invoke({"si", "--no_such_flag", "1"}).code, kExitConfig);
}

TEST_F(CliWorkspace, MissingGazetteerExitsTwoWithoutOutputs) {
  const auto dir = out("nogaz");
  const auto r = invoke({"si", "--corpus", file("corpus.jsonl"), "--standard_lexicon",
                         file("lexicon.csv"), "--gazetteer", out("absent.csv"),
                         "--output_dir", dir});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(std::filesystem::exists(dir));
}

TEST_F(CliWorkspace, SiWritesCsvDetailAndManifest) {
  auto args = base("si", "si");
  args[8] = "nuts2";
  for (const char* a : {"--iterations", "10", "--ground_truth"}) args.push_back(a);
  args.push_back(file("diversity.csv"));
  const auto r = invoke(args);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = read_file(out("si") + "/si.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "region,si,mean_r,n_iterations_used");
  EXPECT_EQ(line_count(csv), 4u);
  const auto detail = nlohmann::json::parse(read_file(out("si") + "/si_detail.json"));
  EXPECT_EQ(detail["iteration_count"], 10);
  EXPECT_EQ(detail["regions"].size(), 3u);
  EXPECT_EQ(detail["regions"][0]["per_iteration_r"].size() +
                detail["regions"][0]["skipped_iterations"].get<std::size_t>(),
            10u);
  EXPECT_TRUE(detail["groundtruth_correlation"].is_number());
  const auto manifest = nlohmann::json::parse(read_file(out("si") + "/manifest.json"));
  EXPECT_EQ(manifest["command"], "si");
  EXPECT_EQ(manifest["config"]["iterations"], "10");
  EXPECT_EQ(manifest["outputs"]["si.csv"], hex64(fnv1a64(csv)));
  EXPECT_TRUE(manifest["inputs"].contains("corpus"));
}

TEST_F(CliWorkspace, OutputsReproduceFromManifest) {
  auto args = base("null-model", "first");
  args.push_back("--jobs");
  args.push_back("1");
  ASSERT_EQ(invoke(args).code, 0);
  const auto manifest = nlohmann::json::parse(read_file(out("first") + "/manifest.json"));
  // Rebuild the INI from the recorded configuration and rerun elsewhere.
  std::string ini;
  for (const auto& [k, v] : manifest["config"].items()) {
    if (k != "output_dir" && k != "jobs") ini += k + " = " + v.get<std::string>() + "\n";
  }
  TempDir tmp;
  const auto path = write_file(tmp / "replay.ini", ini);
  const auto r = invoke({"null-model", "--config", path.string(), "--output_dir", out("second"),
                         "--jobs", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const auto& [name, digest] : manifest["outputs"].items()) {
    EXPECT_EQ(read_file(out("first") + "/" + name), read_file(out("second") + "/" + name)) << name;
  }
}

TEST_F(CliWorkspace, SweepHasOneRowPerPair) {
  auto args = base("sweep-params", "sweep");
  for (const char* a : {"--sweep_range", "1:5:1", "--sweep_entropy", "0.5:2.3:0.2", "--iterations", "2"}) {
    args.push_back(a);
  }
  const auto r = invoke(args);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = read_file(out("sweep") + "/sweep.csv");
  EXPECT_EQ(line_count(csv), 1u + 5u * 10u);
  EXPECT_NE(csv.find("\n3,1.1,"), std::string::npos);
}

TEST_F(CliWorkspace, OtherCommandsProduceTheirFiles) {
  ASSERT_EQ(invoke(base("build-network", "net")).code, 0);
  EXPECT_GT(line_count(read_file(out("net") + "/network.tsv")), 100u);

  const auto spread = invoke(base("spread", "spread"));
  ASSERT_EQ(spread.code, 0) << spread.err;
  EXPECT_EQ(read_file(out("spread") + "/valences.csv").rfind("lemma,valence,seed\n", 0), 0u);
  EXPECT_EQ(read_file(out("spread") + "/round_log.csv").rfind("round,node,valence\n", 0), 0u);

  TempDir tmp;
  const auto pop = write_file(tmp / "pop.csv", "region,population\nR0,1000\nR1,2000\nR2,4000\n");
  auto b = base("baselines", "base");
  for (const std::string& a : std::vector<std::string>{"--population", pop.string(), "--ground_truth", file("diversity.csv")}) {
    b.push_back(a);
  }
  const auto baselines = invoke(b);
  ASSERT_EQ(baselines.code, 0) << baselines.err;
  const auto rows = read_file(out("base") + "/baselines.csv");
  EXPECT_EQ(line_count(rows), 4u);
  EXPECT_NE(rows.find("R0,"), std::string::npos);
  EXPECT_EQ(line_count(read_file(out("base") + "/baseline_correlations.csv")), 6u);
}

TEST_F(CliWorkspace, ClassifyEvalComparesLexicons) {
  std::string labeled;
  for (int i = 0; i < 300; ++i) {
    const int cls = i % 3;
    const char* label = cls == 0 ? "negative" : cls == 1 ? "neutral" : "positive";
    labeled += "{\"id\":\"" + std::to_string(i) + "\",\"lemmas\":[";
    for (int k = 0; k < 4; ++k) {
      labeled += std::string(k ? "," : "") + "[\"w0" + std::to_string(cls * 3 + k % 3) + std::to_string(i % 10) +
                 "\",\"noun\"]";
    }
    labeled += std::string("],\"label\":\"") + label + "\"}\n";
  }
  TempDir tmp;
  const auto data = write_file(tmp / "labeled.jsonl", labeled);
  auto args = base("classify-eval", "cls");
  for (const std::string& a : std::vector<std::string>{"--labeled_data", data.string(), "--repeats", "3"}) args.push_back(a);
  const auto r = invoke(args);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = read_file(out("cls") + "/classify_report.csv");
  EXPECT_EQ(line_count(csv), 1u + 2u * 10u);
  EXPECT_NE(csv.find("community,all,accuracy,"), std::string::npos);
}

TEST_F(CliWorkspace, DataErrorsExitThree) {
  TempDir tmp;
  const auto bad = write_file(tmp / "bad.csv", "term,valence\nx,42\n");
  auto args = base("si", "bad");
  args[4] = bad.string();
  const auto r = invoke(args);
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("bad.csv:2"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(out("bad")));
}

TEST(CliRun, ExitCodeMapping) {
  EXPECT_EQ(exit_code(ErrorCategory::kConfig), 2);
  EXPECT_EQ(exit_code(ErrorCategory::kData), 3);
  EXPECT_EQ(exit_code(ErrorCategory::kInvariant), 4);
}

}  // namespace
}  // namespace superdiv::cli
