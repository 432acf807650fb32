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

#include "stylevec/featurizers.h"

#include <gtest/gtest.h>

#include <numeric>

#include "stylevec/error.h"
#include "stylevec/profile.h"
#include "synthetic.h"

namespace stylevec {
namespace {

using testing::SentenceBuilder;

const Featurizer& Shipped() {
  static const Profile profile = Profile::Load(DefaultProfilePath(LabelScheme::kClearNlp));
  return profile.featurizer();
}

double At(const GroupCounts& g, const Featurizer& f, const std::string& entry) {
  auto idx = f.vocabulary(g.group).Find(entry);
  EXPECT_TRUE(idx.has_value()) << entry;
  return idx ? g.counts[*idx] : -1;
}

ParsedDocument TextDoc(const std::string& text) {
  ParsedDocument d;
  d.doc_id = "t";
  d.raw_text = text;
  return d;
}

// "She runs ." with PRON VERB PUNCT.
Sentence SheRuns() {
  SentenceBuilder b;
  int she = b.Add("She", "she", "PRON", "PRP", "Case=Nom|Number=Sing|Person=3");
  int runs = b.Add("runs", "run", "VERB", "VBZ");
  int dot = b.Add(".", ".", "PUNCT", ".", "PunctType=Peri");
  b.Root(runs);
  b.Attach(she, runs, "nsubj");
  b.Attach(dot, runs, "punct");
  return b.Build();
}

Sentence Passive(const std::string& verb, const std::string& lemma) {
  SentenceBuilder b;
  int it = b.Add("It", "it", "PRON", "PRP");
  int was = b.Add("was", "be", "AUX", "VBD");
  int v = b.Add(verb, lemma, "VERB", "VBN");
  int dot = b.Add(".", ".", "PUNCT", ".");
  b.Root(v);
  b.Attach(it, v, "nsubjpass");
  b.Attach(was, v, "auxpass");
  b.Attach(dot, v, "punct");
  return b.Build();
}

Sentence Words(const std::vector<std::string>& words) {
  SentenceBuilder b;
  int root = b.Add(words[0], words[0], "X", "XX");
  b.Root(root);
  for (size_t i = 1; i < words.size(); ++i) {
    b.Attach(b.Add(words[i], words[i], "X", "XX"), root, "dep");
  }
  Sentence s = b.Build();
  s[0].surface = words[0];
  return s;
}

TEST(PunctuationTest, CountsAndDenominator) {
  const auto& f = Shipped();
  auto g = f.CountPunctuation(TextDoc("Hi!!! Ok."));
  EXPECT_EQ(At(g, f, "!"), 3);
  EXPECT_EQ(At(g, f, "."), 1);
  EXPECT_EQ(g.Total(), 4);
  EXPECT_EQ(g.denominator, 4);
  auto e = f.CountPunctuation(TextDoc(""));
  EXPECT_EQ(e.Total(), 0);
  EXPECT_EQ(e.denominator, 0);
  EXPECT_EQ(At(f.CountPunctuation(TextDoc("a\xE2\x80\x94" "b")), f, "\xE2\x80\x94"), 1);
}

TEST(EmojiCountTest, OovBucket) {
  const auto& f = Shipped();
  auto g = f.CountEmojis(TextDoc("x 😀 y 😀 🦩"));
  const auto& vocab = f.vocabulary(FeatureGroup::kEmojis);
  EXPECT_FALSE(vocab.Find("🦩").has_value());
  EXPECT_EQ(At(g, f, "😀"), 2);
  EXPECT_EQ(g.counts[vocab.oov_index()], 1);
  EXPECT_EQ(g.denominator, 3);
  auto none = f.CountEmojis(TextDoc("no emoji"));
  EXPECT_EQ(none.Total(), 0);
  EXPECT_EQ(none.denominator, 0);
}

TEST(EmojiCountTest, ModifiedEmojiFallsBackByMembership) {
  const auto& f = Shipped();
  const auto& vocab = f.vocabulary(FeatureGroup::kEmojis);
  const std::string modified = "👍🏽";
  auto g = f.CountEmojis(TextDoc(modified));
  if (vocab.Find(modified)) {
    EXPECT_EQ(At(g, f, modified), 1);
  } else {
    EXPECT_EQ(g.counts[vocab.oov_index()], 1);
  }
}

TEST(PosTest, UnigramsAndBigrams) {
  const auto& f = Shipped();
  auto doc = testing::DocumentFromSentences("d", {SheRuns()}, {});
  auto uni = f.CountPosUnigrams(doc);
  EXPECT_EQ(At(uni, f, "PRON"), 1);
  EXPECT_EQ(At(uni, f, "VERB"), 1);
  EXPECT_EQ(At(uni, f, "PUNCT"), 1);
  EXPECT_EQ(uni.denominator, 3);
  auto bi = f.CountPosBigrams(doc);
  EXPECT_EQ(At(bi, f, "PRON VERB"), 1);
  EXPECT_EQ(At(bi, f, "VERB PUNCT"), 1);
  EXPECT_EQ(bi.Total(), 2);
  EXPECT_EQ(bi.denominator, 2);
}

TEST(PosTest, BigramsStayInsideSentences) {
  const auto& f = Shipped();
  auto doc = testing::DocumentFromSentences("d", {Words({"Go"}), Words({"Stop"})}, {});
  auto bi = f.CountPosBigrams(doc);
  EXPECT_EQ(bi.Total(), 0);
  EXPECT_EQ(bi.denominator, 0);
}

TEST(PosTest, HundredTokens) {
  const auto& f = Shipped();
  std::vector<std::string> words(100, "w");
  auto doc = testing::DocumentFromSentences("d", {Words(words)}, {});
  EXPECT_EQ(f.CountPosUnigrams(doc).denominator, 100);
}

TEST(MorphTest, BothFeaturesIncremented) {
  const auto& f = Shipped();
  SentenceBuilder b;
  int a = b.Add("a", "a", "DET", "DT", "Definite=Ind|PronType=Art");
  b.Root(a);
  auto g = f.CountMorphTags(testing::DocumentFromSentences("d", {b.Build()}, {}));
  EXPECT_EQ(At(g, f, "Definite=Ind"), 1);
  EXPECT_EQ(At(g, f, "PronType=Art"), 1);
  auto bare = f.CountMorphTags(testing::DocumentFromSentences("d", {Words({"x", "y"})}, {}));
  EXPECT_EQ(bare.Total(), 0);
}

TEST(DepLabelTest, PassiveLabelsAndRoot) {
  const auto& f = Shipped();
  auto g = f.CountDepLabels(testing::DocumentFromSentences("d", {Passive("created", "create")}, {}));
  EXPECT_EQ(At(g, f, "nsubjpass"), 1);
  EXPECT_EQ(At(g, f, "auxpass"), 1);
  EXPECT_EQ(At(g, f, "ROOT"), 1);
  auto root_only = f.CountDepLabels(testing::DocumentFromSentences("d", {Words({"Go"})}, {}));
  EXPECT_EQ(At(root_only, f, "ROOT"), 1);
  // "dep" is counted, an unknown label is dropped.
  Sentence s = Words({"a", "b"});
  s[1].deprel = "no_such_label";
  EXPECT_EQ(f.CountDepLabels(testing::DocumentFromSentences("d", {s}, {})).Total(), 1);
}

TEST(ConstructionTest, ItCleftAndPassives) {
  const auto& f = Shipped();
  auto cleft = f.CountConstructions(
      testing::DocumentFromSentences("d", {testing::MoralDebtSentence()}, {}));
  EXPECT_EQ(At(cleft, f, "it_cleft"), 1);
  EXPECT_EQ(cleft.denominator, 1);
  auto passives = f.CountConstructions(testing::DocumentFromSentences(
      "d", {Passive("passed", "pass"), Passive("created", "create")}, {}));
  EXPECT_GE(At(passives, f, "passive"), 2);
  auto none = f.CountConstructions(
      testing::DocumentFromSentences("d", {SheRuns(), SheRuns(), SheRuns()}, {}));
  EXPECT_EQ(none.Total(), 0);
  EXPECT_EQ(none.denominator, 3);
}

TEST(FunctionWordTest, CaseFolded) {
  const auto& f = Shipped();
  auto g = f.CountFunctionWords(testing::DocumentFromSentences("d", {Words({"The", "the", "THE"})}, {}));
  EXPECT_EQ(At(g, f, "the"), 3);
  auto none = f.CountFunctionWords(testing::DocumentFromSentences("d", {Words({"zebra"})}, {}));
  EXPECT_EQ(none.Total(), 0);
}

TEST(TransitionTest, SentenceInitialOnly) {
  const auto& f = Shipped();
  auto g = f.CountTransitionWords(testing::DocumentFromSentences(
      "d", {Words({"However", ",", "it", "rained"}), Words({"He", "said", "however"})}, {}));
  EXPECT_EQ(At(g, f, "however"), 1);
  EXPECT_EQ(g.Total(), 1);
  EXPECT_EQ(g.denominator, 2);
}

TEST(TransitionTest, LongestMatchWins) {
  const auto& shipped = Shipped();
  VocabularySet v;
  for (auto group : kCoreGroups) {
    if (group == FeatureGroup::kConstructions) continue;
    const auto& src = shipped.vocabulary(group);
    auto entries = src.entries();
    if (src.has_oov()) entries.pop_back();
    auto vocab = FeatureVocabulary::FromEntries(group, entries, src.has_oov());
    switch (group) {
      case FeatureGroup::kPunctuation: v.punctuation = vocab; break;
      case FeatureGroup::kEmojis: v.emojis = vocab; break;
      case FeatureGroup::kPosUnigrams: v.pos_unigrams = vocab; break;
      case FeatureGroup::kPosBigrams: v.pos_bigrams = vocab; break;
      case FeatureGroup::kMorphTags: v.morph_tags = vocab; break;
      case FeatureGroup::kDepLabels: v.dep_labels = vocab; break;
      case FeatureGroup::kFuncWords: v.func_words = vocab; break;
      default: break;
    }
  }
  v.transition_words = FeatureVocabulary::FromEntries(FeatureGroup::kTransitionWords,
                                                      {"on", "on the other hand"});
  Featurizer f(v, PatternSet());
  auto g = f.CountTransitionWords(testing::DocumentFromSentences(
      "d", {Words({"On", "the", "other", "hand", ",", "no"}), Words({"On", "it", "goes"})}, {}));
  EXPECT_EQ(g.counts, (std::vector<double>{1, 1}));
  EXPECT_TRUE(f.CountConstructions(testing::DocumentFromSentences("d", {SheRuns()}, {}))
                  .counts.empty());
}

TEST(AuxLengthTest, Counts) {
  const auto& f = Shipped();
  auto doc = testing::DocumentFromSentences("d", {Words({"However", "the", "The"}), Words({"x"})}, {});
  auto g = f.CountAuxLength(doc);
  EXPECT_EQ(g.counts, (std::vector<double>{4, 3, 2, 1}));
}

TEST(NormalizeGroupTest, Modes) {
  GroupCounts g{FeatureGroup::kPunctuation, {3, 1, 0}, 8};
  EXPECT_EQ(NormalizeGroup(g, NormalizationMode::kGroupTotal),
            (std::vector<double>{0.75, 0.25, 0}));
  EXPECT_EQ(NormalizeGroup(g, NormalizationMode::kRate),
            (std::vector<double>{3.0 / 8, 1.0 / 8, 0}));
  GroupCounts zero{FeatureGroup::kPunctuation, {0, 0}, 0};
  EXPECT_EQ(NormalizeGroup(zero, NormalizationMode::kRate), (std::vector<double>{0, 0}));
  GroupCounts aux{FeatureGroup::kAuxLength, {10, 7, 5, 1}, 1};
  EXPECT_EQ(NormalizeGroup(aux, NormalizationMode::kGroupTotal), aux.counts);
}

TEST(FeaturizerTest, RejectsBadVocabularies) {
  VocabularySet v;
  v.punctuation = FeatureVocabulary::FromEntries(FeatureGroup::kPunctuation, {"..."});
  v.emojis = FeatureVocabulary::FromEntries(FeatureGroup::kEmojis, {"😀"}, true);
  EXPECT_THROW(Featurizer(v, PatternSet()), Error);
  v.punctuation = FeatureVocabulary::FromEntries(FeatureGroup::kPunctuation, {"."});
  v.emojis = FeatureVocabulary::FromEntries(FeatureGroup::kEmojis, {"😀"}, false);
  EXPECT_THROW(Featurizer(v, PatternSet()), Error);
}

}  // namespace
}  // namespace stylevec
