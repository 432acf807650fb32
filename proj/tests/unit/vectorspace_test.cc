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

#include "stylevec/vectorspace.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>

#include "stylevec/error.h"
#include "stylevec/random.h"
#include "synthetic.h"

namespace stylevec {
namespace {

const Profile& Default() {
  static const Profile p = Profile::Load(DefaultProfilePath(LabelScheme::kClearNlp));
  return p;
}

StyleVector Manual(const std::string& id, std::vector<double> values,
                   Stage stage = Stage::kNormalized, const std::string& hash = "h") {
  std::vector<std::string> names;
  for (size_t i = 0; i < values.size(); ++i) names.push_back("g:f" + std::to_string(i));
  return {id, hash, stage, std::make_shared<const std::vector<std::string>>(names),
          std::move(values)};
}

bool SameBits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

TEST(VectorizeTest, PunctuationShares) {
  ParsedDocument doc = testing::DocumentFromSentences("d", {testing::MoralDebtSentence()}, {});
  doc.raw_text = "a. b. c, d.";
  auto v = Vectorize(doc, Default());
  EXPECT_EQ(v.ValueOf("punctuation:."), 0.75);
  EXPECT_EQ(v.ValueOf("punctuation:,"), 0.25);
  EXPECT_THROW(v.ValueOf("punctuation:nope"), Error);
}

TEST(VectorizeTest, EmptyDocumentIsZero) {
  auto v = Vectorize(ParsedDocument{"e", "", "", {}, ""}, Default());
  EXPECT_EQ(v.size(), 937u);
  for (double x : v.values) EXPECT_EQ(x, 0);
  EXPECT_EQ(v.profile_hash, Default().hash());
}

TEST(VectorizeTest, UnigramsSumToOne) {
  std::mt19937_64 rng(1);
  auto doc = testing::GenerateDocument("g", {0.5, 0.5, 0.5, 0.5}, 8, rng);
  auto v = Vectorize(doc, Default());
  const auto* span = Default().layout().Find(FeatureGroup::kPosUnigrams);
  double s = 0;
  for (size_t i = 0; i < span->size; ++i) s += v.values[span->offset + i];
  EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(VectorizeTest, RawStageKeepsCounts) {
  auto doc = testing::DocumentFromSentences("d", {testing::MoralDebtSentence()}, {});
  auto v = Vectorize(doc, Default(), Stage::kRaw);
  EXPECT_EQ(v.stage, Stage::kRaw);
  EXPECT_EQ(v.ValueOf("pos_unigrams:PRON"), 4);
  EXPECT_THROW(Vectorize(doc, Default(), Stage::kZNormed), Error);
}

TEST(VectorizeTest, RateModeUsesTokenDenominator) {
  auto rate = Profile::Load(DefaultProfilePath(LabelScheme::kClearNlp),
                            {.normalization = NormalizationMode::kRate});
  auto doc = testing::DocumentFromSentences("d", {testing::MoralDebtSentence()}, {});
  auto v = Vectorize(doc, rate);
  EXPECT_DOUBLE_EQ(v.ValueOf("func_words:that"), 1.0 / 13);
}

TEST(VectorizeTest, LabelSchemeMismatch) {
  auto ud = Profile::Load(DefaultProfilePath(LabelScheme::kUd));
  auto doc = testing::DocumentFromSentences("d", {testing::MoralDebtSentence()}, {});
  EXPECT_THROW(Vectorize(doc, ud), Error);
}

TEST(BackgroundTest, MeanAndPopulationStd) {
  std::vector<StyleVector> vs = {Manual("a", {0, 5}), Manual("b", {2, 5})};
  auto stats = FitBackground(vs);
  EXPECT_EQ(stats.mean, (std::vector<double>{1, 5}));
  EXPECT_EQ(stats.std, (std::vector<double>{1, 0}));
  EXPECT_EQ(stats.n_docs, 2u);
}

TEST(BackgroundTest, Errors) {
  std::vector<StyleVector> one = {Manual("a", {1})};
  EXPECT_THROW(FitBackground(one), Error);
  std::vector<StyleVector> mixed = {Manual("a", {1}), Manual("b", {1}, Stage::kNormalized, "other")};
  EXPECT_THROW(FitBackground(mixed), Error);
}

TEST(ZNormTest, Arithmetic) {
  BackgroundStats stats{"h", 2, {0.1, 0.3, 0.5}, {0.05, 0.0, 1.0}};
  auto z = ZNormalize(Manual("a", {0.2, 0.9, 0.5}), stats);
  EXPECT_NEAR(z.values[0], 2.0, 1e-12);
  EXPECT_EQ(z.values[1], 0.0);
  EXPECT_EQ(z.values[2], 0.0);
  EXPECT_EQ(z.stage, Stage::kZNormed);
  EXPECT_THROW(ZNormalize(z, stats), Error);
  EXPECT_THROW(ZNormalize(Manual("a", {1, 2, 3}, Stage::kNormalized, "x"), stats), Error);
}

TEST(RequireProfileTest, RefusesForeignHash) {
  std::vector<StyleVector> vs = {Manual("a", {1}, Stage::kNormalized, "x")};
  EXPECT_NO_THROW(RequireProfile(vs, "x", "vectors"));
  EXPECT_THROW(RequireProfile(vs, "y", "vectors"), Error);
}

std::vector<StyleVector> Awkward() {
  std::mt19937_64 rng(9);
  std::vector<StyleVector> vs;
  for (int i = 0; i < 10; ++i) {
    std::vector<double> values(6);
    for (auto& x : values) x = (UniformUnit(rng) - 0.5) * std::pow(10.0, i - 5);
    values[5] = i == 0 ? 5e-324 : i == 1 ? -0.0 : 1.0 / 3;
    vs.push_back(Manual(i == 0 ? "quote\"and,comma" : "doc" + std::to_string(i), values));
  }
  return vs;
}

void ExpectBitEqual(const std::vector<StyleVector>& a, const std::vector<StyleVector>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].doc_id, b[i].doc_id);
    EXPECT_EQ(a[i].profile_hash, b[i].profile_hash);
    EXPECT_EQ(a[i].stage, b[i].stage);
    EXPECT_EQ(*a[i].names, *b[i].names);
    ASSERT_EQ(a[i].size(), b[i].size());
    for (size_t j = 0; j < a[i].size(); ++j) {
      EXPECT_TRUE(SameBits(a[i].values[j], b[i].values[j])) << i << "," << j;
    }
  }
}

TEST(VectorIoTest, CsvRoundTrip) {
  auto vs = Awkward();
  std::stringstream ss;
  WriteVectorsCsv(vs, ss);
  ExpectBitEqual(ReadVectorsCsv(ss), vs);
}

TEST(VectorIoTest, JsonlRoundTrip) {
  auto vs = Awkward();
  std::stringstream ss;
  WriteVectorsJsonl(vs, ss);
  ExpectBitEqual(ReadVectorsJsonl(ss), vs);
}

TEST(VectorIoTest, FilesByExtension) {
  auto vs = Awkward();
  auto dir = std::filesystem::temp_directory_path() / "stylevec_vectorspace_test";
  std::filesystem::create_directories(dir);
  for (const char* name : {"v.csv", "v.jsonl"}) {
    WriteVectorsFile(dir / name, vs);
    ExpectBitEqual(ReadVectorsFile(dir / name), vs);
  }
  std::filesystem::remove_all(dir);
}

TEST(VectorIoTest, MalformedCsv) {
  std::istringstream in("# stylevec profile_hash=h stage=normalized\ndoc_id,g:a\nx,1,2\n");
  EXPECT_THROW(ReadVectorsCsv(in), Error);
}

TEST(StatsIoTest, RoundTrip) {
  BackgroundStats stats{"h", 3, {0.1, 1.0 / 3, 0}, {5e-324, 0, 2.5}};
  auto back = StatsFromJson(StatsToJson(stats));
  EXPECT_EQ(back.profile_hash, "h");
  EXPECT_EQ(back.n_docs, 3u);
  for (size_t i = 0; i < 3; ++i) {
    EXPECT_TRUE(SameBits(back.mean[i], stats.mean[i]));
    EXPECT_TRUE(SameBits(back.std[i], stats.std[i]));
  }
}

TEST(StageTest, Names) {
  for (auto s : {Stage::kRaw, Stage::kNormalized, Stage::kZNormed}) {
    EXPECT_EQ(ParseStage(StageName(s)), s);
  }
  EXPECT_THROW(ParseStage("cooked"), Error);
}

}  // namespace
}  // namespace stylevec
