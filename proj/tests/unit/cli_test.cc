// Copyright 2026 The Stylevec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stylevec/cli/cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "stylevec/cli/manifest.h"
#include "stylevec/corpus.h"
#include "stylevec/detect.h"
#include "stylevec/io_util.h"
#include "stylevec/vectorspace.h"
#include "synthetic.h"

namespace stylevec::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("stylevec_cli_" + std::string(::testing::UnitTest::GetInstance()
                                              ->current_test_info()
                                              ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int Cli(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::Run(args, out_, err_);
  }

  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  // Corpus as CoNLL-U plus a metadata JSONL carrying author and label.
  void WriteCorpus(const std::string& stem, const std::vector<ParsedDocument>& docs) {
    std::ofstream conllu(P(stem + ".conllu"));
    WriteConllu(docs, conllu);
    std::ofstream meta(P(stem + ".jsonl"));
    for (const auto& d : docs) {
      nlohmann::json j = {{"doc_id", d.doc_id}, {"text", ""}, {"author_id", d.author_id},
                          {"label", d.label}};
      meta << j.dump() << '\n';
    }
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, VerificationPipeline) {
  WriteCorpus("av", testing::AvCorpus(1, 20));
  WriteCorpus("bg", testing::AvCorpus(2, 20));
  ASSERT_EQ(Cli({"vectorize", "--conllu", P("av.conllu"), "--docs", P("av.jsonl"), "-o",
                 P("av.csv")}),
            kExitOk)
      << err_.str();
  ASSERT_EQ(Cli({"vectorize", "--conllu", P("bg.conllu"), "-o", P("bg.jsonl")}), kExitOk)
      << err_.str();
  ASSERT_EQ(Cli({"fit-background", "--vectors", P("bg.jsonl"), "-o", P("stats.json")}), kExitOk)
      << err_.str();
  ASSERT_EQ(Cli({"znorm", "--vectors", P("av.csv"), "--stats", P("stats.json"), "-o",
                 P("z.csv")}),
            kExitOk)
      << err_.str();
  auto z = ReadVectorsFile(P("z.csv"));
  ASSERT_EQ(z.size(), 40u);
  EXPECT_EQ(z[0].stage, Stage::kZNormed);
  EXPECT_EQ(z[0].size(), 937u);

  ASSERT_EQ(Cli({"pairs", "--conllu", P("av.conllu"), "--docs", P("av.jsonl"), "--same", "40",
                 "--diff", "40", "--seed", "3", "-o", P("pairs.jsonl")}),
            kExitOk)
      << err_.str();
  ASSERT_EQ(Cli({"verify", "--pairs", P("pairs.jsonl"), "--vectors", P("z.csv"), "--tune-split",
                 "0.5", "--seed", "4", "-o", P("report.json"), "--results", P("results.csv")}),
            kExitOk)
      << err_.str();
  auto report = nlohmann::json::parse(ReadFile(P("report.json")));
  EXPECT_TRUE(report["threshold_tuned"].get<bool>());
  EXPECT_EQ(report["n_pairs"].get<size_t>() + report["n_tune_pairs"].get<size_t>(), 80u);
  EXPECT_GT(report["auc"].get<double>(), 0.8);

  // Same numbers when verify z-normalizes on the fly.
  ASSERT_EQ(Cli({"verify", "--pairs", P("pairs.jsonl"), "--vectors", P("av.csv"), "--stats",
                 P("stats.json"), "--tune-split", "0.5", "--seed", "4", "-o", P("report2.json")}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(nlohmann::json::parse(ReadFile(P("report2.json")))["auc"], report["auc"]);

  auto manifest = ManifestFromJson(ReadFile(ManifestPathFor(P("report.json")).string()));
  EXPECT_EQ(manifest.command, "verify");
  EXPECT_EQ(manifest.seed, 4u);
  EXPECT_EQ(manifest.profile_hash, z[0].profile_hash);
  ASSERT_FALSE(manifest.outputs.empty());
  EXPECT_EQ(manifest.outputs[0].sha256.size(), 64u);
  EXPECT_EQ(manifest.config.at("tune-split"), "0.5");

  std::string a = z[0].doc_id, b = z[1].doc_id;
  ASSERT_EQ(Cli({"explain", "--vectors", P("z.csv"), "--a", a, "--b", b, "--threshold", "0.15",
                 "-n", "5", "--format", "csv"}),
            kExitOk)
      << err_.str();
  std::istringstream lines(out_.str());
  int count = 0;
  for (std::string line; std::getline(lines, line);) ++count;
  EXPECT_EQ(count, 6);
  EXPECT_NE(Cli({"explain", "--vectors", P("av.csv"), "--a", a, "--b", b, "--threshold", "0.1"}),
            kExitOk);
}

TEST_F(CliTest, DetectionPipeline) {
  WriteCorpus("tr", testing::DetectionCorpus(5, 40));
  WriteCorpus("te", testing::DetectionCorpus(6, 20));
  ASSERT_EQ(Cli({"vectorize", "--conllu", P("tr.conllu"), "-o", P("tr.csv")}), kExitOk) << err_.str();
  ASSERT_EQ(Cli({"vectorize", "--conllu", P("te.conllu"), "-o", P("te.csv")}), kExitOk) << err_.str();
  ASSERT_EQ(Cli({"detect", "train", "--vectors", P("tr.csv"), "--docs", P("tr.jsonl"), "-o",
                 P("model.json"), "--seed", "2"}),
            kExitOk)
      << err_.str();
  auto model = ReadModelFile(P("model.json"));
  EXPECT_EQ(model.positive_class, "human");
  ASSERT_EQ(Cli({"detect", "eval", "--model", P("model.json"), "--vectors", P("te.csv"), "--docs",
                 P("te.jsonl"), "-o", P("eval.json")}),
            kExitOk)
      << err_.str();
  EXPECT_GE(nlohmann::json::parse(ReadFile(P("eval.json")))["accuracy"].get<double>(), 0.9);
  ASSERT_EQ(Cli({"detect", "top", "--model", P("model.json"), "-k", "10", "--format", "csv"}),
            kExitOk)
      << err_.str();
  std::istringstream lines(out_.str());
  int count = 0;
  for (std::string line; std::getline(lines, line);) ++count;
  EXPECT_EQ(count, 11);
  ASSERT_EQ(Cli({"detect", "retrain", "--vectors", P("tr.csv"), "--docs", P("tr.jsonl"), "-k",
                 "10", "-o", P("reduced.json"), "--eval-vectors", P("te.csv"), "--eval-docs",
                 P("te.jsonl")}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(ReadModelFile(P("reduced.json")).feature_names.size(), 10u);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Cli({}), kExitUsage);
  EXPECT_EQ(Cli({"vectorize", "--no-such-flag"}), kExitUsage);
  EXPECT_EQ(Cli({"--help"}), kExitOk);
  EXPECT_EQ(Cli({"verify", "--pairs", P("missing.jsonl"), "--vectors", P("missing.csv"),
                 "--threshold", "0.1"}),
            kExitDataError);
  EXPECT_FALSE(err_.str().empty());
}

TEST_F(CliTest, LabelSchemeMismatchIsDataError) {
  WriteCorpus("c", testing::AvCorpus(1, 2));
  EXPECT_EQ(Cli({"vectorize", "--conllu", P("c.conllu"), "--label-scheme", "ud"}), kExitDataError);
  EXPECT_NE(err_.str().find("label scheme mismatch"), std::string::npos) << err_.str();
}

TEST_F(CliTest, PatternsConformance) {
  EXPECT_EQ(Cli({"patterns", "test", "--pack", "en-clearnlp"}), kExitOk) << err_.str();
  EXPECT_EQ(Cli({"patterns", "test", "--pack", "en-ud"}), kExitOk) << err_.str();
  std::vector<ParsedDocument> docs = {
      testing::DocumentFromSentences("m", {testing::MoralDebtSentence()}, {})};
  std::ofstream(P("m.conllu")) << [&] {
    std::ostringstream s;
    WriteConllu(docs, s);
    return s.str();
  }();
  ASSERT_EQ(Cli({"patterns", "linearize", "--conllu", P("m.conllu")}), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("(was-be-VBD-ROOT(It-it-PRP-nsubj)"), std::string::npos);
}

TEST(ManifestTest, JsonRoundTrip) {
  RunManifest m;
  m.command = "verify";
  m.argv = {"verify", "--seed", "1"};
  m.config = {{"seed", "1"}};
  m.profile_hash = "abc";
  m.inputs = {{"in.csv", std::string(64, 'a')}};
  m.seed = 1;
  m.version = "0.1.0";
  m.started_at = UtcTimestamp();
  m.finished_at = m.started_at;
  auto back = ManifestFromJson(m.ToJson());
  EXPECT_EQ(back.command, m.command);
  EXPECT_EQ(back.argv, m.argv);
  EXPECT_EQ(back.config, m.config);
  EXPECT_EQ(back.seed, m.seed);
  EXPECT_EQ(back.inputs[0].sha256, m.inputs[0].sha256);
  EXPECT_EQ(ManifestPathFor("out/r.json"), fs::path("out/r.json.manifest.json"));
  EXPECT_EQ(m.started_at.size(), 20u);
}

}  // namespace
}  // namespace stylevec::cli
