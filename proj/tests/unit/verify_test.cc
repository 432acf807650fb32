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

#include "stylevec/verify.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "stylevec/error.h"
#include "stylevec/random.h"

namespace stylevec {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double BruteAuc(const std::vector<ScoredPair>& s) {
  double num = 0, den = 0;
  for (const auto& p : s) {
    for (const auto& n : s) {
      if (!p.positive || n.positive) continue;
      den += 1;
      num += p.score > n.score ? 1 : p.score == n.score ? 0.5 : 0;
    }
  }
  return num / den;
}

double BruteBalanced(const std::vector<ScoredPair>& s, double t) {
  double tp = 0, p = 0, tn = 0, n = 0;
  for (const auto& x : s) {
    bool same = x.score >= t;
    if (x.positive) {
      p += 1;
      tp += same;
    } else {
      n += 1;
      tn += !same;
    }
  }
  return 0.5 * (tp / p + tn / n);
}

// Best balanced accuracy over every distinct score used as an inclusive cut,
// plus +inf. Any threshold in between two adjacent scores behaves like the
// upper one.
double BruteBestBalanced(const std::vector<ScoredPair>& s) {
  double best = BruteBalanced(s, kInf);
  for (const auto& x : s) best = std::max(best, BruteBalanced(s, x.score));
  return best;
}

std::vector<ScoredPair> RandomScores(std::mt19937_64& rng, size_t n, int levels) {
  std::vector<ScoredPair> s;
  for (size_t i = 0; i < n; ++i) {
    s.push_back({static_cast<double>(UniformBelow(rng, levels)) / levels, i % 2 == 0});
  }
  return s;
}

StyleVector Vec(const std::string& id, std::vector<double> v, const std::string& hash = "h") {
  auto names = std::make_shared<const std::vector<std::string>>(
      std::vector<std::string>(v.size(), "g:x"));
  return {id, hash, Stage::kZNormed, names, std::move(v)};
}

TEST(CosineTest, Basics) {
  std::vector<double> a = {1, 2, 3};
  std::vector<double> e1 = {1, 0}, e2 = {0, 1}, zero = {0, 0};
  EXPECT_NEAR(Cosine(a, a), 1.0, 1e-15);
  EXPECT_EQ(Cosine(e1, e2), 0.0);
  EXPECT_EQ(Cosine(e1, zero), 0.0);
  std::vector<double> neg = {-1, -2, -3};
  EXPECT_NEAR(Cosine(a, neg), -1.0, 1e-15);
  std::vector<double> short_v = {1};
  EXPECT_THROW(Cosine(a, short_v), Error);
  EXPECT_THROW(Cosine(Vec("a", {1}), Vec("b", {1}, "other")), Error);
}

TEST(DecideTest, InclusiveBoundary) {
  EXPECT_TRUE(Decide(0.20, 0.15));
  EXPECT_FALSE(Decide(0.09, 0.15));
  EXPECT_TRUE(Decide(0.15, 0.15));
}

TEST(AucTest, Examples) {
  std::vector<ScoredPair> s = {{0.1, false}, {0.4, false}, {0.35, true}, {0.8, true}};
  EXPECT_EQ(Auc(s), 0.75);
  std::vector<ScoredPair> sep = {{0.1, false}, {0.2, false}, {0.8, true}, {0.9, true}};
  EXPECT_EQ(Auc(sep), 1.0);
  std::vector<ScoredPair> tied = {{0.5, false}, {0.5, true}, {0.5, true}};
  EXPECT_EQ(Auc(tied), 0.5);
  std::vector<ScoredPair> one = {{0.5, true}};
  EXPECT_THROW(Auc(one), Error);
}

TEST(AucTest, MatchesBruteForce) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = RandomScores(rng, 2 + UniformBelow(rng, 30), 1 + UniformBelow(rng, 8));
    EXPECT_DOUBLE_EQ(Auc(s), BruteAuc(s));
  }
}

TEST(TuneThresholdTest, Separable) {
  std::vector<ScoredPair> s = {{0.8, true}, {0.9, true}, {0.1, false}, {0.2, false}};
  auto c = TuneThreshold(s);
  EXPECT_EQ(c.threshold, 0.5);
  EXPECT_EQ(c.balanced_accuracy, 1.0);
}

TEST(TuneThresholdTest, MixedExample) {
  std::vector<ScoredPair> s = {{0.1, false}, {0.35, true}, {0.4, false}, {0.8, true}};
  auto c = TuneThreshold(s);
  EXPECT_EQ(c.balanced_accuracy, 0.75);
  std::set<double> midpoints = {(0.1 + 0.35) / 2, (0.35 + 0.4) / 2, (0.4 + 0.8) / 2};
  EXPECT_TRUE(midpoints.count(c.threshold)) << c.threshold;
  EXPECT_EQ(c.threshold, (0.1 + 0.35) / 2);
}

TEST(TuneThresholdTest, AllEqualSentinel) {
  std::vector<ScoredPair> s = {{0.3, true}, {0.3, false}};
  auto c = TuneThreshold(s);
  EXPECT_EQ(c.threshold, -kInf);
  EXPECT_EQ(c.balanced_accuracy, 0.5);
}

TEST(TuneThresholdTest, MatchesBruteForce) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = RandomScores(rng, 2 + UniformBelow(rng, 30), 1 + UniformBelow(rng, 10));
    auto c = TuneThreshold(s);
    EXPECT_NEAR(c.balanced_accuracy, BruteBestBalanced(s), 1e-12);
    EXPECT_NEAR(BruteBalanced(s, c.threshold), c.balanced_accuracy, 1e-12);
    EXPECT_NEAR(BalancedAccuracy(s, c.threshold), c.balanced_accuracy, 1e-12);
  }
}

TEST(TuneThresholdTest, SingleClassIsError) {
  std::vector<ScoredPair> s = {{0.3, true}, {0.4, true}};
  EXPECT_THROW(TuneThreshold(s), Error);
}

std::vector<StyleVector> FourVectors() {
  return {Vec("a1", {1, 0.1}), Vec("a2", {0.9, 0.2}), Vec("b1", {-1, 0.1}),
          Vec("b2", {-0.8, -0.3})};
}

TEST(RunVerificationTest, FixedThreshold) {
  auto vs = FourVectors();
  std::vector<DocumentPair> eval = {{"a1", "a2", true}, {"b1", "b2", true},
                                    {"a1", "b1", false}, {"a2", "b2", false}};
  VerifyConfig config;
  config.threshold = 0.5;
  auto run = RunVerification(eval, {}, vs, config);
  EXPECT_EQ(run.report.accuracy, 1.0);
  EXPECT_EQ(run.report.auc, 1.0);
  EXPECT_FALSE(run.report.threshold_tuned);
  EXPECT_EQ(run.report.confusion.true_pos, 2u);
  EXPECT_EQ(run.report.confusion.true_neg, 2u);
  ASSERT_EQ(run.results.size(), 4u);
  EXPECT_DOUBLE_EQ(run.results[0].similarity, Cosine(vs[0], vs[1]));
  EXPECT_EQ(run.results[0].threshold_used, 0.5);

  auto again = RunVerification(eval, {}, vs, config);
  EXPECT_EQ(ReportToJson(again.report), ReportToJson(run.report));
}

TEST(RunVerificationTest, TunedAndErrors) {
  auto vs = FourVectors();
  std::vector<DocumentPair> tune = {{"a1", "a2", true}, {"a1", "b1", false}};
  std::vector<DocumentPair> eval = {{"b1", "b2", true}, {"a2", "b2", false}};
  auto run = RunVerification(eval, tune, vs, {});
  EXPECT_TRUE(run.report.threshold_tuned);
  EXPECT_EQ(run.report.n_tune_pairs, 2u);
  EXPECT_EQ(run.report.accuracy, 1.0);

  std::vector<DocumentPair> overlap = {{"a2", "a1", true}};
  EXPECT_THROW(RunVerification(overlap, tune, vs, {}), Error);
  EXPECT_THROW(RunVerification(eval, {}, vs, {}), Error);
  std::vector<DocumentPair> missing = {{"a1", "zz", true}};
  try {
    VerifyConfig c;
    c.threshold = 0;
    RunVerification(missing, {}, vs, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("zz"), std::string::npos);
  }
}

TEST(RunVerificationTest, SingleClassEvalHasNoAuc) {
  auto vs = FourVectors();
  std::vector<DocumentPair> eval = {{"a1", "a2", true}};
  VerifyConfig c;
  c.threshold = 0;
  EXPECT_FALSE(RunVerification(eval, {}, vs, c).report.auc.has_value());
}

TEST(SplitPairsTest, StratifiedAndDisjoint) {
  std::vector<DocumentPair> pairs;
  for (int i = 0; i < 10; ++i) pairs.push_back({"s" + std::to_string(i), "t", true});
  for (int i = 0; i < 30; ++i) pairs.push_back({"d" + std::to_string(i), "t", false});
  auto split = SplitPairs(pairs, 0.3, 5);
  EXPECT_EQ(split.tune.size() + split.eval.size(), 40u);
  EXPECT_EQ(std::count_if(split.tune.begin(), split.tune.end(),
                          [](const DocumentPair& p) { return p.same_author; }),
            3);
  EXPECT_EQ(split.tune.size(), 12u);
  auto again = SplitPairs(pairs, 0.3, 5);
  EXPECT_EQ(again.tune, split.tune);
  EXPECT_THROW(SplitPairs(pairs, 1.0, 5), Error);

  std::vector<DocumentPair> small = {{"a", "b", true}, {"c", "d", true},
                                     {"e", "f", false}, {"g", "h", false}};
  auto s2 = SplitPairs(small, 0.01, 1);
  EXPECT_EQ(s2.tune.size(), 2u);
  EXPECT_EQ(s2.eval.size(), 2u);
}

TEST(ResultsCsvTest, Format) {
  VerificationResult r{{"a", "b", true}, 0.25, true, 0.2};
  std::ostringstream out;
  WriteResultsCsv(std::span<const VerificationResult>(&r, 1), out);
  EXPECT_EQ(out.str(), "doc_a,doc_b,similarity,truth,prediction\na,b,0.25,same,same\n");
}

}  // namespace
}  // namespace stylevec
